#include "plq/plmodel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "plq/errors.hpp"

namespace plq {

namespace {

constexpr double kZeroEigenvalueTol = 1e-14;
constexpr double kImagMultipleTol = 1e-9;

void check_support(int n, const std::vector<PauliWord>& support) {
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (support[i].num_qubits() != n)
      throw InvalidArgument("support word size does not match qubit count");
    if (support[i].is_identity())
      throw InvalidArgument("identity word is not allowed in a PL support");
    if (i > 0 && support[i - 1].index() >= support[i].index())
      throw InvalidArgument("support must be strictly sorted by index");
  }
}

void check_imag_invariant(int n, const Eigen::VectorXcd& lambda) {
  const double unit = std::numbers::pi / std::pow(4.0, n);
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    const double im = lambda[i].imag();
    const double nearest = std::round(im / unit) * unit;
    if (std::abs(im - nearest) > kImagMultipleTol)
      throw InvalidArgument(
          "imaginary part of a PL parameter must be an integer multiple of "
          "pi/4^n (principal-branch residue)");
  }
}

}  // namespace

PLParams::PLParams(int num_qubits) : n_(num_qubits) {
  if (num_qubits < 1 || num_qubits > kMaxWordQubits)
    throw InvalidArgument("invalid qubit count");
  lambda_.resize(0);
}

PLParams::PLParams(int num_qubits, std::vector<PauliWord> support,
                   Eigen::VectorXcd lambda)
    : n_(num_qubits), support_(std::move(support)), lambda_(std::move(lambda)) {
  if (static_cast<Eigen::Index>(support_.size()) != lambda_.size())
    throw InvalidArgument("support and lambda sizes differ");
  std::vector<std::size_t> order(support_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return support_[a].index() < support_[b].index();
  });
  std::vector<PauliWord> sorted_support;
  sorted_support.reserve(support_.size());
  Eigen::VectorXcd sorted_lambda(lambda_.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    sorted_support.push_back(support_[order[i]]);
    sorted_lambda[static_cast<Eigen::Index>(i)] =
        lambda_[static_cast<Eigen::Index>(order[i])];
  }
  support_ = std::move(sorted_support);
  lambda_ = std::move(sorted_lambda);
  check_support(n_, support_);
  check_imag_invariant(n_, lambda_);
}

PLParams PLParams::from_real(int num_qubits, std::vector<PauliWord> support,
                             const Eigen::VectorXd& lambda) {
  return PLParams(num_qubits, std::move(support),
                  lambda.cast<std::complex<double>>());
}

std::complex<double> PLParams::lambda_of(const PauliWord& word) const {
  if (word.num_qubits() != n_)
    throw InvalidArgument("word size does not match parameters");
  const auto it = std::lower_bound(
      support_.begin(), support_.end(), word,
      [](const PauliWord& a, const PauliWord& b) {
        return a.index() < b.index();
      });
  if (it == support_.end() || !(*it == word)) return {0.0, 0.0};
  return lambda_[static_cast<Eigen::Index>(it - support_.begin())];
}

double PLParams::max_imag() const {
  double m = 0.0;
  for (Eigen::Index i = 0; i < lambda_.size(); ++i)
    m = std::max(m, std::abs(lambda_[i].imag()));
  return m;
}

Eigen::VectorXd PLParams::real_lambda(double tol) const {
  if (max_imag() > tol)
    throw InvalidArgument("PL parameters are not real");
  return lambda_.real();
}

Eigen::VectorXcd f_from_lambda_complex(const PLParams& params) {
  const int n = params.num_qubits();
  const Eigen::Index count = Eigen::Index{1} << (2 * n);
  Eigen::VectorXcd exponent = Eigen::VectorXcd::Zero(count);
  for (std::size_t k = 0; k < params.size(); ++k) {
    const PauliWord& wk = params.support()[k];
    const std::complex<double> lk =
        params.lambda()[static_cast<Eigen::Index>(k)];
    for (Eigen::Index a = 0; a < count; ++a) {
      const PauliWord wa = PauliWord::from_index(n, static_cast<std::uint64_t>(a));
      if (symplectic_product(wa, wk)) exponent[a] += lk;
    }
  }
  return (-2.0 * exponent).array().exp();
}

PauliVector f_from_lambda(const PLParams& params, double imag_tol) {
  const Eigen::VectorXcd f = f_from_lambda_complex(params);
  const double scale = std::max(1.0, f.cwiseAbs().maxCoeff());
  const double residue = f.imag().cwiseAbs().maxCoeff();
  if (residue > imag_tol * scale)
    throw NumericError(
        "PL map has complex Pauli eigenvalues (imaginary residue " +
        std::to_string(residue) + "); use f_from_lambda_complex");
  return PauliVector(params.num_qubits(), f.real());
}

PLParams lambda_from_f(const PauliVector& f) {
  const int n = f.num_qubits();
  const Eigen::Index count = f.size();
  for (Eigen::Index k = 0; k < count; ++k)
    if (std::abs(f[k]) < kZeroEigenvalueTol)
      throw IllDefinedError(
          "PL parameters are ill-defined: Pauli eigenvalue f[" +
          std::to_string(k) + "] vanishes");
  Eigen::VectorXcd logf(count);
  for (Eigen::Index k = 0; k < count; ++k)
    logf[k] = std::log(std::complex<double>(f[k], 0.0));
  const double norm = std::pow(0.25, n);
  std::vector<PauliWord> support;
  support.reserve(static_cast<std::size_t>(count - 1));
  Eigen::VectorXcd lambda(count - 1);
  for (Eigen::Index a = 1; a < count; ++a) {
    const PauliWord wa = PauliWord::from_index(n, static_cast<std::uint64_t>(a));
    std::complex<double> acc = 0.0;
    for (Eigen::Index k = 1; k < count; ++k) {
      const PauliWord wk = PauliWord::from_index(n, static_cast<std::uint64_t>(k));
      const double sign = symplectic_product(wa, wk) ? -1.0 : 1.0;
      acc += sign * logf[k];
    }
    support.push_back(wa);
    lambda[a - 1] = norm * acc;
  }
  return PLParams(n, std::move(support), std::move(lambda));
}

PlChannelResult pl_channel(const PLParams& params, double cp_tol,
                           double tp_tol) {
  PauliChannel channel(f_from_lambda(params), /*validate=*/false);
  CptpReport report = channel.check(cp_tol, tp_tol);
  return {std::move(channel), report};
}

CsmVerdict classify_pauli(const PLParams& params, double tol) {
  CsmVerdict verdict;
  verdict.tol = tol;
  verdict.witness_kind = CsmVerdict::WitnessKind::kPlParams;
  const double imag = params.max_imag();
  double min_real = params.lambda().size() == 0 ? 0.0 : params.lambda()[0].real();
  for (Eigen::Index i = 1; i < params.lambda().size(); ++i)
    min_real = std::min(min_real, params.lambda()[i].real());
  if (imag > tol) {
    verdict.is_csm = false;
    verdict.min_value = -std::numeric_limits<double>::infinity();
  } else {
    verdict.min_value = min_real;
    verdict.is_csm = min_real >= -tol;
  }
  verdict.lambda_witness = params;
  return verdict;
}

CsmVerdict classify_pauli(const PauliVector& f, double tol) {
  return classify_pauli(lambda_from_f(f), tol);
}

bool qubit_criterion(const PauliVector& f, double tol) {
  if (f.num_qubits() != 1)
    throw InvalidArgument("qubit criterion is defined for n = 1 only");
  const double fx = f[1], fz = f[2], fy = f[3];
  if (fx <= 0.0 || fy <= 0.0 || fz <= 0.0)
    throw InvalidArgument("qubit criterion requires positive eigenvalues");
  return fx + tol >= fy * fz && fy + tol >= fx * fz && fz + tol >= fx * fy;
}

double log_cosh(double x) {
  const double a = std::abs(x);
  return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
}

double min_third_parameter(double ell) {
  if (ell < 0.0) throw InvalidArgument("ell must be nonnegative");
  return -0.5 * log_cosh(2.0 * ell);
}

namespace {

// Lawson-Hanson nonnegative least squares on ||a x - y||.
Eigen::VectorXd nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& y) {
  const Eigen::Index p = a.cols();
  Eigen::VectorXd x = Eigen::VectorXd::Zero(p);
  std::vector<bool> passive(static_cast<std::size_t>(p), false);
  const double tol = 1e-12 * std::max(1.0, a.cwiseAbs().maxCoeff()) *
                     std::max(1.0, y.cwiseAbs().maxCoeff());
  const int max_iter = 30 * static_cast<int>(p) + 30;
  auto solve_passive = [&](Eigen::VectorXd& z) {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index j = 0; j < p; ++j)
      if (passive[static_cast<std::size_t>(j)]) idx.push_back(j);
    if (idx.empty()) {
      z.setZero(p);
      return;
    }
    Eigen::MatrixXd sub(a.rows(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t c = 0; c < idx.size(); ++c)
      sub.col(static_cast<Eigen::Index>(c)) = a.col(idx[c]);
    Eigen::VectorXd zi = sub.colPivHouseholderQr().solve(y);
    z.setZero(p);
    for (std::size_t c = 0; c < idx.size(); ++c)
      z[idx[c]] = zi[static_cast<Eigen::Index>(c)];
  };
  for (int iter = 0; iter < max_iter; ++iter) {
    const Eigen::VectorXd grad = a.transpose() * (y - a * x);
    Eigen::Index best = -1;
    double best_val = tol;
    for (Eigen::Index j = 0; j < p; ++j)
      if (!passive[static_cast<std::size_t>(j)] && grad[j] > best_val) {
        best_val = grad[j];
        best = j;
      }
    if (best < 0) break;
    passive[static_cast<std::size_t>(best)] = true;
    Eigen::VectorXd z(p);
    solve_passive(z);
    while (true) {
      bool feasible = true;
      double alpha = 1.0;
      for (Eigen::Index j = 0; j < p; ++j) {
        if (!passive[static_cast<std::size_t>(j)]) continue;
        if (z[j] <= 0.0) {
          feasible = false;
          const double denom = x[j] - z[j];
          if (denom > 0.0) alpha = std::min(alpha, x[j] / denom);
        }
      }
      if (feasible) break;
      x += alpha * (z - x);
      for (Eigen::Index j = 0; j < p; ++j)
        if (passive[static_cast<std::size_t>(j)] && x[j] <= tol) {
          passive[static_cast<std::size_t>(j)] = false;
          x[j] = 0.0;
        }
      solve_passive(z);
    }
    x = z;
  }
  return x;
}

}  // namespace

FitResult fit_sparse_lambda(const std::vector<FMeasurement>& measured,
                            std::vector<PauliWord> support,
                            bool allow_negative) {
  if (measured.empty()) throw InvalidArgument("no measurements");
  if (support.empty()) throw InvalidArgument("empty support");
  const int n = support.front().num_qubits();
  std::sort(support.begin(), support.end(),
            [](const PauliWord& a, const PauliWord& b) {
              return a.index() < b.index();
            });
  check_support(n, support);

  const Eigen::Index rows = static_cast<Eigen::Index>(measured.size());
  const Eigen::Index cols = static_cast<Eigen::Index>(support.size());
  Eigen::MatrixXd a(rows, cols);
  Eigen::VectorXd y(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const FMeasurement& m = measured[static_cast<std::size_t>(i)];
    if (m.word.num_qubits() != n)
      throw InvalidArgument("measured word size does not match support");
    if (m.value <= 0.0)
      throw InvalidArgument(
          "measured Pauli eigenvalues must be positive for the log-linear "
          "fit; got " +
          std::to_string(m.value) + " for word " + m.word.label());
    const double w = m.sigma > 0.0 ? 1.0 / m.sigma : 1.0;
    for (Eigen::Index j = 0; j < cols; ++j)
      a(i, j) =
          w * 2.0 *
          symplectic_product(m.word, support[static_cast<std::size_t>(j)]);
    y[i] = -w * std::log(m.value);
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  if (qr.rank() < cols)
    throw RankDeficiencyError(
        "measurements do not determine the support: rank " +
        std::to_string(qr.rank()) + " < " + std::to_string(cols));

  Eigen::VectorXd lambda =
      allow_negative ? Eigen::VectorXd(qr.solve(y)) : nnls(a, y);
  const double residual = (a * lambda - y).squaredNorm();
  return {PLParams::from_real(n, std::move(support), lambda), residual};
}

}  // namespace plq
