#ifndef PLQ_CHANNEL_HPP
#define PLQ_CHANNEL_HPP

#include <memory>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "plq/pauli.hpp"

namespace plq {

enum class Repr { kKraus, kPauliBasis, kTransfer, kChoi };

inline constexpr double kDefaultCpTol = 1e-9;
inline constexpr double kDefaultTpTol = 1e-10;

struct CptpReport {
  bool cp_ok = false;
  bool tp_ok = false;
  double min_choi_eigenvalue = 0.0;  // of the trace-normalized Choi matrix
  double max_tp_violation = 0.0;     // max |T_0b - delta_0b|
  double cp_tol = 0.0;
  double tp_tol = 0.0;

  bool ok() const { return cp_ok && tp_ok; }
  std::string summary() const;
};

// A Hermiticity-preserving linear map on n-qubit operators, typically a
// channel. Immutable; the canonical internal representation is the real
// transfer matrix T_ab = 2^-n tr[P_a E(P_b)], other representations are
// derived on demand and cached. Copies share state, so passing by value is
// cheap.
class Channel {
 public:
  static Channel identity(int num_qubits);
  static Channel from_kraus(std::vector<Eigen::MatrixXcd> kraus);
  static Channel from_transfer(Eigen::MatrixXd transfer);
  static Channel from_pauli_basis(const Eigen::MatrixXcd& pauli_basis);
  // Unnormalized Choi matrix (trace 2^n for a trace-preserving map).
  static Channel from_choi(const Eigen::MatrixXcd& choi);
  // Conjugation rho -> U rho U^dagger.
  static Channel from_unitary(const Eigen::MatrixXcd& unitary);

  int num_qubits() const;

  const Eigen::MatrixXd& transfer() const;
  const Eigen::MatrixXcd& choi() const;
  const Eigen::MatrixXcd& pauli_basis() const;
  // Kraus operators; recovered from the Choi eigendecomposition unless the
  // channel was built from a Kraus set. Requires complete positivity.
  const std::vector<Eigen::MatrixXcd>& kraus() const;

  // Diagonal of the transfer matrix.
  PauliVector pauli_eigenvalues() const;

  Eigen::MatrixXcd apply(const Eigen::MatrixXcd& rho) const;

 private:
  struct Impl;
  explicit Channel(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

// Composition a after b: transfer(a) * transfer(b).
Channel compose(const Channel& a, const Channel& b);

// Choi positivity plus trace preservation, with the violating numbers kept
// for diagnostics.
CptpReport is_cptp(const Channel& ch, double cp_tol = kDefaultCpTol,
                   double tp_tol = kDefaultTpTol);

// A Pauli channel, fully characterized by its Pauli eigenvalues f (diagonal
// transfer matrix). Construction validates f_0 = 1, |f_a| <= 1 and p >= 0
// within tolerance unless validate = false (Pauli-Lindblad maps that are
// not channels are representable on purpose).
class PauliChannel {
 public:
  explicit PauliChannel(PauliVector eigenvalues, bool validate = true,
                        double cp_tol = kDefaultCpTol,
                        double tp_tol = kDefaultTpTol);

  int num_qubits() const { return f_.num_qubits(); }
  const PauliVector& eigenvalues() const { return f_; }
  PauliVector probabilities() const { return walsh_hadamard_f_to_p(f_); }
  Channel channel() const;

  CptpReport check(double cp_tol = kDefaultCpTol,
                   double tp_tol = kDefaultTpTol) const;

 private:
  PauliVector f_;
};

// Pauli twirl: keeps the transfer diagonal, equal to the average of the
// channel over conjugation by all 4^n Pauli words. Throws when the input
// fails the CPTP invariant.
PauliChannel twirl(const Channel& ch, double cp_tol = kDefaultCpTol,
                   double tp_tol = kDefaultTpTol);

// p_ab = sum_i kappa_ia kappa_ib^* with kappa_ia = 2^-n tr(P_a K_i).
Eigen::MatrixXcd pauli_basis_from_kraus(
    const std::vector<Eigen::MatrixXcd>& kraus);

// Random CPTP channel from a Stinespring truncation: orthonormalize a
// Gaussian (num_kraus 2^n) x 2^n matrix and slice it into Kraus blocks.
Channel random_cptp(int num_qubits, int num_kraus, std::mt19937_64& rng);

}  // namespace plq

#endif
