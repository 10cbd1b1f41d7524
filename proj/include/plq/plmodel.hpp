#ifndef PLQ_PLMODEL_HPP
#define PLQ_PLMODEL_HPP

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "plq/channel.hpp"
#include "plq/pauli.hpp"

namespace plq {

inline constexpr double kDefaultCsmTol = 1e-10;

// Pauli-Lindblad parameters: one rate coefficient lambda_a per non-identity
// word in the (sorted, duplicate-free) support set; off-support values are
// implicitly zero. Negative and complex values are allowed on purpose; when
// an imaginary part is nonzero it must be an integer multiple of pi/4^n,
// the residue left by the principal-branch logarithm.
class PLParams {
 public:
  explicit PLParams(int num_qubits);
  PLParams(int num_qubits, std::vector<PauliWord> support,
           Eigen::VectorXcd lambda);
  static PLParams from_real(int num_qubits, std::vector<PauliWord> support,
                            const Eigen::VectorXd& lambda);

  int num_qubits() const { return n_; }
  std::size_t size() const { return support_.size(); }
  const std::vector<PauliWord>& support() const { return support_; }
  const Eigen::VectorXcd& lambda() const { return lambda_; }

  // Value for an arbitrary word; zero off support.
  std::complex<double> lambda_of(const PauliWord& word) const;

  double max_imag() const;
  bool is_real(double tol = 0.0) const { return max_imag() <= tol; }
  // Real parts as a plain vector, valid only when is_real().
  Eigen::VectorXd real_lambda(double tol = 1e-12) const;

 private:
  int n_;
  std::vector<PauliWord> support_;
  Eigen::VectorXcd lambda_;
};

// Classification result of a Markovianity test. For Pauli channels the
// witness is the PL parameter vector; for the general channel-logarithm
// test it is the Kossakowski spectrum.
struct CsmVerdict {
  enum class WitnessKind { kPlParams, kKossakowskiSpectrum };

  bool is_csm = false;
  // Smallest witness value: min real lambda, or the min Kossakowski
  // eigenvalue. -inf when the witness is not real.
  double min_value = 0.0;
  double tol = kDefaultCsmTol;
  WitnessKind witness_kind = WitnessKind::kPlParams;
  std::optional<PLParams> lambda_witness;
  Eigen::VectorXd kossakowski_spectrum;
};

// Pauli eigenvalues of the PL map: f_a = exp(-2 sum_k lambda_k <a,k>).
// Throws NumericError when the result is not real within imag_tol (possible
// for hand-built complex parameters); f_from_lambda_complex never does.
PauliVector f_from_lambda(const PLParams& params, double imag_tol = 1e-10);
Eigen::VectorXcd f_from_lambda_complex(const PLParams& params);

// Inverse map lambda_a = 4^-n sum_{k != 0} (-1)^<a,k> Ln f_k over the full
// non-identity support, principal branch. Throws IllDefinedError when some
// |f_k| < 1e-14.
PLParams lambda_from_f(const PauliVector& f);

struct PlChannelResult {
  PauliChannel channel;
  CptpReport report;
};

// PL map as a Pauli channel together with its CPTP diagnostics. Maps with
// negative or complex parameters may fail complete positivity; they are
// reported, never rejected.
PlChannelResult pl_channel(const PLParams& params,
                           double cp_tol = kDefaultCpTol,
                           double tp_tol = kDefaultTpTol);

// A Pauli channel is channel-semigroup Markovian iff all its PL parameters
// are real and nonnegative.
CsmVerdict classify_pauli(const PauliVector& f, double tol = kDefaultCsmTol);
CsmVerdict classify_pauli(const PLParams& params, double tol = kDefaultCsmTol);

// Single-qubit shortcut: CSM iff f_j >= f_k f_l for all permutations of
// (x, y, z). Requires positive eigenvalues.
bool qubit_criterion(const PauliVector& f, double tol = 1e-12);

// Smallest admissible third PL parameter when two of them equal ell:
// -log(cosh(2 ell)) / 2. Hadamard dephasing saturates the bound.
double min_third_parameter(double ell);

// log(cosh(x)), stable for large |x|.
double log_cosh(double x);

struct FMeasurement {
  PauliWord word;
  double value = 0.0;
  double sigma = 0.0;  // <= 0 means unit weight; else weight = 1/sigma^2
};

struct FitResult {
  PLParams params;
  double residual = 0.0;  // achieved weighted least-squares objective
};

// Weighted least squares for lambda on the given support from measured
// Pauli eigenvalues, linear after taking logarithms:
//   minimize sum_i w_i (ln f_i + 2 sum_k lambda_k <a_i,k>)^2.
// With allow_negative = false the nonnegativity-constrained problem is
// solved instead (Lawson-Hanson active set).
FitResult fit_sparse_lambda(const std::vector<FMeasurement>& measured,
                            std::vector<PauliWord> support,
                            bool allow_negative);

}  // namespace plq

#endif
