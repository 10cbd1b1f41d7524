#ifndef PLQ_PAULI_HPP
#define PLQ_PAULI_HPP

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

#include <Eigen/Dense>

namespace plq {

// Caps on dense allocations: 2^n x 2^n complex matrices up to n = 6,
// 4^n x 4^n transfer-size matrices up to n = 5. Larger requests are
// rejected instead of thrashing.
inline constexpr int kMaxDenseQubits = 6;
inline constexpr int kMaxTransferQubits = 5;
// Bit-packed words keep each of the x/z halves in one 64-bit lane.
inline constexpr int kMaxWordQubits = 32;

// An n-qubit Pauli word in symplectic form. Qubit q carries X iff bit q of
// x_bits() is set, Z iff bit q of z_bits() is set, and Y when both are set,
// with the phase convention Y = i X Z. Qubit 0 is the leftmost label
// character and the most significant tensor factor of the dense matrix.
class PauliWord {
 public:
  // Identity word on num_qubits qubits.
  explicit PauliWord(int num_qubits);

  static PauliWord from_label(std::string_view label);
  static PauliWord from_bits(int num_qubits, std::uint64_t x_bits,
                             std::uint64_t z_bits);
  static PauliWord from_index(int num_qubits, std::uint64_t index);

  int num_qubits() const { return n_; }
  std::uint64_t x_bits() const { return x_; }
  std::uint64_t z_bits() const { return z_; }
  bool is_identity() const { return x_ == 0 && z_ == 0; }

  // Canonical index: the 2n-bit integer x_bits | z_bits << n, x half low.
  // Fixed so serialized vectors are portable across runs.
  std::uint64_t index() const { return x_ | (z_ << n_); }

  std::string label() const;

  friend bool operator==(const PauliWord&, const PauliWord&) = default;

 private:
  PauliWord(int n, std::uint64_t x, std::uint64_t z) : n_(n), x_(x), z_(z) {}

  int n_;
  std::uint64_t x_;
  std::uint64_t z_;
};

// Symplectic inner product: 0 if the dense forms commute, 1 if they
// anticommute. Computed as (a.x . b.z + a.z . b.x) mod 2.
int symplectic_product(const PauliWord& a, const PauliWord& b);

// Word product: phase * matrix(word) == matrix(a) * matrix(b), with phase
// in {1, i, -1, -i}.
std::pair<std::complex<double>, PauliWord> multiply(const PauliWord& a,
                                                    const PauliWord& b);

// Dense 2^n x 2^n matrix of the word; Hermitian and unitary, with
// tr(P_a P_b) = 2^n delta_ab.
Eigen::MatrixXcd pauli_matrix(const PauliWord& word);

// A real vector indexed by all 4^n Pauli words in canonical order; index 0
// is the identity word. Holds Pauli eigenvalues f or error probabilities p
// depending on context.
class PauliVector {
 public:
  explicit PauliVector(int num_qubits);
  PauliVector(int num_qubits, Eigen::VectorXd values);

  int num_qubits() const { return n_; }
  Eigen::Index size() const { return values_.size(); }
  const Eigen::VectorXd& values() const { return values_; }
  Eigen::VectorXd& values() { return values_; }

  double operator[](Eigen::Index i) const { return values_[i]; }
  double& operator[](Eigen::Index i) { return values_[i]; }
  double at(const PauliWord& word) const;
  double& at(const PauliWord& word);

  double sum() const { return values_.sum(); }

 private:
  int n_;
  Eigen::VectorXd values_;
};

// f_a = sum_k (-1)^<a,k> p_k and its inverse p_a = 4^-n sum_k (-1)^<a,k> f_k.
// Butterfly implementation, O(n 4^n). An f_0 != 1 input is accepted; the
// resulting p then sums to f_0 instead of 1.
PauliVector walsh_hadamard_p_to_f(const PauliVector& p);
PauliVector walsh_hadamard_f_to_p(const PauliVector& f);

// O(16^n) double-loop reference versions, retained as oracles for the
// butterfly implementation.
PauliVector walsh_hadamard_p_to_f_naive(const PauliVector& p);
PauliVector walsh_hadamard_f_to_p_naive(const PauliVector& f);

}  // namespace plq

#endif
