#include "plq/channel.hpp"

#include <cmath>
#include <mutex>
#include <sstream>
#include <utility>

#include "plq/errors.hpp"
#include "plq/superop.hpp"

namespace plq {

namespace {

int qubits_from_dim(Eigen::Index dim, const char* what) {
  int n = 0;
  Eigen::Index d = 1;
  while (d < dim) {
    d *= 2;
    ++n;
  }
  if (d != dim || n == 0)
    throw InvalidArgument(std::string(what) + " dimension " +
                          std::to_string(dim) + " is not a power of two");
  return n;
}

void check_transfer_qubits(int n) {
  if (n > kMaxTransferQubits)
    throw SizeLimitError("transfer-size matrices limited to " +
                         std::to_string(kMaxTransferQubits) +
                         " qubits, got " + std::to_string(n));
}

}  // namespace

struct Channel::Impl {
  int n = 0;
  Eigen::MatrixXd transfer;
  std::vector<Eigen::MatrixXcd> kraus_origin;  // only when built from Kraus

  mutable std::mutex mu;
  mutable std::unique_ptr<Eigen::MatrixXcd> superop;
  mutable std::unique_ptr<Eigen::MatrixXcd> choi;
  mutable std::unique_ptr<Eigen::MatrixXcd> pauli_basis;
  mutable std::unique_ptr<std::vector<Eigen::MatrixXcd>> kraus;

  const Eigen::MatrixXcd& superop_ref() const {
    std::scoped_lock lock(mu);
    if (!superop)
      superop = std::make_unique<Eigen::MatrixXcd>(
          superop::superop_from_transfer(transfer, n));
    return *superop;
  }
};

Channel Channel::identity(int num_qubits) {
  check_transfer_qubits(num_qubits);
  const Eigen::Index dim = Eigen::Index{1} << (2 * num_qubits);
  return from_transfer(Eigen::MatrixXd::Identity(dim, dim));
}

Channel Channel::from_transfer(Eigen::MatrixXd transfer) {
  if (transfer.rows() != transfer.cols())
    throw InvalidArgument("transfer matrix must be square");
  const int two_n = qubits_from_dim(transfer.rows(), "transfer");
  if (two_n % 2 != 0)
    throw InvalidArgument("transfer dimension must be a power of four");
  auto impl = std::make_shared<Impl>();
  impl->n = two_n / 2;
  check_transfer_qubits(impl->n);
  impl->transfer = std::move(transfer);
  return Channel(std::move(impl));
}

Channel Channel::from_kraus(std::vector<Eigen::MatrixXcd> kraus) {
  if (kraus.empty()) throw InvalidArgument("empty Kraus set");
  const Eigen::Index d = kraus.front().rows();
  for (const auto& k : kraus)
    if (k.rows() != d || k.cols() != d)
      throw InvalidArgument("Kraus operators must be square with equal size");
  const int n = qubits_from_dim(d, "Kraus");
  check_transfer_qubits(n);
  auto impl = std::make_shared<Impl>();
  impl->n = n;
  impl->superop =
      std::make_unique<Eigen::MatrixXcd>(superop::from_kraus(kraus));
  impl->transfer = superop::transfer_from_superop(*impl->superop, n);
  impl->kraus_origin = std::move(kraus);
  return Channel(std::move(impl));
}

Channel Channel::from_choi(const Eigen::MatrixXcd& choi) {
  if (choi.rows() != choi.cols())
    throw InvalidArgument("Choi matrix must be square");
  const int two_n = qubits_from_dim(choi.rows(), "Choi");
  if (two_n % 2 != 0)
    throw InvalidArgument("Choi dimension must be a power of four");
  const int n = two_n / 2;
  check_transfer_qubits(n);
  const Eigen::Index d = Eigen::Index{1} << n;
  auto impl = std::make_shared<Impl>();
  impl->n = n;
  impl->superop =
      std::make_unique<Eigen::MatrixXcd>(superop::superop_from_choi(choi, d));
  impl->transfer = superop::transfer_from_superop(*impl->superop, n);
  impl->choi = std::make_unique<Eigen::MatrixXcd>(choi);
  return Channel(std::move(impl));
}

Channel Channel::from_pauli_basis(const Eigen::MatrixXcd& pauli_basis) {
  if (pauli_basis.rows() != pauli_basis.cols())
    throw InvalidArgument("Pauli-basis matrix must be square");
  const int two_n = qubits_from_dim(pauli_basis.rows(), "Pauli-basis");
  if (two_n % 2 != 0)
    throw InvalidArgument("Pauli-basis dimension must be a power of four");
  const int n = two_n / 2;
  check_transfer_qubits(n);
  const superop::PauliBasis& basis = superop::pauli_basis(n);
  // J = sum_ab p_ab |P_a>> <<P_b| over row-major vectorized words.
  Eigen::MatrixXcd choi = basis.vr_row * pauli_basis * basis.vr_row.adjoint();
  Channel ch = from_choi(choi);
  std::scoped_lock lock(ch.impl_->mu);
  ch.impl_->pauli_basis = std::make_unique<Eigen::MatrixXcd>(pauli_basis);
  return ch;
}

Channel Channel::from_unitary(const Eigen::MatrixXcd& unitary) {
  if (unitary.rows() != unitary.cols())
    throw InvalidArgument("unitary must be square");
  const Eigen::Index d = unitary.rows();
  const double dev =
      (unitary.adjoint() * unitary - Eigen::MatrixXcd::Identity(d, d))
          .cwiseAbs()
          .maxCoeff();
  if (dev > 1e-10)
    throw InvalidArgument("matrix is not unitary (deviation " +
                          std::to_string(dev) + ")");
  return from_kraus({unitary});
}

int Channel::num_qubits() const { return impl_->n; }

const Eigen::MatrixXd& Channel::transfer() const { return impl_->transfer; }

const Eigen::MatrixXcd& Channel::choi() const {
  std::scoped_lock lock(impl_->mu);
  if (!impl_->choi) {
    if (!impl_->superop)
      impl_->superop = std::make_unique<Eigen::MatrixXcd>(
          superop::superop_from_transfer(impl_->transfer, impl_->n));
    impl_->choi = std::make_unique<Eigen::MatrixXcd>(
        superop::choi_from_superop(*impl_->superop,
                                   Eigen::Index{1} << impl_->n));
  }
  return *impl_->choi;
}

const Eigen::MatrixXcd& Channel::pauli_basis() const {
  {
    std::scoped_lock lock(impl_->mu);
    if (impl_->pauli_basis) return *impl_->pauli_basis;
    if (!impl_->kraus_origin.empty()) {
      impl_->pauli_basis = std::make_unique<Eigen::MatrixXcd>(
          pauli_basis_from_kraus(impl_->kraus_origin));
      return *impl_->pauli_basis;
    }
  }
  const Eigen::MatrixXcd& j = choi();
  const superop::PauliBasis& basis = superop::pauli_basis(impl_->n);
  const double d2 = std::pow(4.0, impl_->n);
  Eigen::MatrixXcd p = basis.vr_row.adjoint() * j * basis.vr_row / d2;
  std::scoped_lock lock(impl_->mu);
  if (!impl_->pauli_basis)
    impl_->pauli_basis = std::make_unique<Eigen::MatrixXcd>(std::move(p));
  return *impl_->pauli_basis;
}

const std::vector<Eigen::MatrixXcd>& Channel::kraus() const {
  {
    std::scoped_lock lock(impl_->mu);
    if (!impl_->kraus_origin.empty()) return impl_->kraus_origin;
    if (impl_->kraus) return *impl_->kraus;
  }
  const Eigen::Index d = Eigen::Index{1} << impl_->n;
  Eigen::MatrixXcd j = choi();
  j = (j + j.adjoint()).eval() / 2.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(j);
  const Eigen::VectorXd evals = es.eigenvalues();
  const double scale = std::max(1.0, evals.cwiseAbs().maxCoeff());
  if (evals.minCoeff() < -1e-9 * scale)
    throw InvalidArgument(
        "channel is not completely positive; Kraus form undefined (min Choi "
        "eigenvalue " +
        std::to_string(evals.minCoeff()) + ")");
  auto ks = std::make_unique<std::vector<Eigen::MatrixXcd>>();
  for (Eigen::Index m = 0; m < evals.size(); ++m) {
    if (evals[m] <= 1e-13 * scale) continue;
    ks->push_back(std::sqrt(evals[m]) *
                  superop::unvec_row(es.eigenvectors().col(m), d));
  }
  if (ks->empty()) ks->push_back(Eigen::MatrixXcd::Zero(d, d));
  std::scoped_lock lock(impl_->mu);
  if (!impl_->kraus) impl_->kraus = std::move(ks);
  return *impl_->kraus;
}

PauliVector Channel::pauli_eigenvalues() const {
  return PauliVector(impl_->n, impl_->transfer.diagonal());
}

Eigen::MatrixXcd Channel::apply(const Eigen::MatrixXcd& rho) const {
  const Eigen::Index d = Eigen::Index{1} << impl_->n;
  if (rho.rows() != d || rho.cols() != d)
    throw InvalidArgument("state dimension does not match channel");
  const Eigen::MatrixXcd& s = impl_->superop_ref();
  Eigen::VectorXcd v = s * superop::vec_col(rho);
  return superop::unvec_col(v, d);
}

Channel compose(const Channel& a, const Channel& b) {
  if (a.num_qubits() != b.num_qubits())
    throw InvalidArgument("composed channels must have equal qubit counts");
  return Channel::from_transfer(a.transfer() * b.transfer());
}

CptpReport is_cptp(const Channel& ch, double cp_tol, double tp_tol) {
  CptpReport report;
  report.cp_tol = cp_tol;
  report.tp_tol = tp_tol;
  const Eigen::MatrixXd& t = ch.transfer();
  Eigen::RowVectorXd top = t.row(0);
  top(0) -= 1.0;
  report.max_tp_violation = top.cwiseAbs().maxCoeff();
  report.tp_ok = report.max_tp_violation <= tp_tol;
  const double d = std::pow(2.0, ch.num_qubits());
  Eigen::MatrixXcd j = ch.choi() / d;
  j = (j + j.adjoint()).eval() / 2.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(j);
  report.min_choi_eigenvalue = es.eigenvalues().minCoeff();
  report.cp_ok = report.min_choi_eigenvalue >= -cp_tol;
  return report;
}

std::string CptpReport::summary() const {
  std::ostringstream os;
  os << "CP " << (cp_ok ? "ok" : "violated") << " (min Choi eigenvalue "
     << min_choi_eigenvalue << ", tol " << cp_tol << "); TP "
     << (tp_ok ? "ok" : "violated") << " (max row-0 deviation "
     << max_tp_violation << ", tol " << tp_tol << ")";
  return os.str();
}

PauliChannel::PauliChannel(PauliVector eigenvalues, bool validate,
                           double cp_tol, double tp_tol)
    : f_(std::move(eigenvalues)) {
  if (validate) {
    const CptpReport report = check(cp_tol, tp_tol);
    if (!report.ok())
      throw InvalidArgument("Pauli eigenvalues do not describe a channel: " +
                            report.summary());
  }
}

CptpReport PauliChannel::check(double cp_tol, double tp_tol) const {
  CptpReport report;
  report.cp_tol = cp_tol;
  report.tp_tol = tp_tol;
  report.max_tp_violation = std::abs(f_[0] - 1.0);
  report.tp_ok = report.max_tp_violation <= tp_tol;
  // For a Pauli channel the normalized Choi eigenvalues are exactly the
  // probabilities p_a, so no dense eigensolve is needed.
  const PauliVector p = walsh_hadamard_f_to_p(f_);
  report.min_choi_eigenvalue = p.values().minCoeff();
  report.cp_ok = report.min_choi_eigenvalue >= -cp_tol &&
                 f_.values().cwiseAbs().maxCoeff() <= 1.0 + cp_tol;
  return report;
}

Channel PauliChannel::channel() const {
  return Channel::from_transfer(Eigen::MatrixXd(f_.values().asDiagonal()));
}

PauliChannel twirl(const Channel& ch, double cp_tol, double tp_tol) {
  return PauliChannel(ch.pauli_eigenvalues(), /*validate=*/true, cp_tol,
                      tp_tol);
}

Eigen::MatrixXcd pauli_basis_from_kraus(
    const std::vector<Eigen::MatrixXcd>& kraus) {
  if (kraus.empty()) throw InvalidArgument("empty Kraus set");
  const Eigen::Index d = kraus.front().rows();
  for (const auto& k : kraus)
    if (k.rows() != d || k.cols() != d)
      throw InvalidArgument("Kraus operators must be square with equal size");
  const int n = qubits_from_dim(d, "Kraus");
  check_transfer_qubits(n);
  const superop::PauliBasis& basis = superop::pauli_basis(n);
  const Eigen::Index count = Eigen::Index{1} << (2 * n);
  Eigen::MatrixXcd kappa(static_cast<Eigen::Index>(kraus.size()), count);
  for (std::size_t i = 0; i < kraus.size(); ++i)
    for (Eigen::Index a = 0; a < count; ++a)
      kappa(static_cast<Eigen::Index>(i), a) =
          (basis.matrices[static_cast<std::size_t>(a)] * kraus[i]).trace() /
          static_cast<double>(d);
  return kappa.transpose() * kappa.conjugate();
}

Channel random_cptp(int num_qubits, int num_kraus, std::mt19937_64& rng) {
  if (num_kraus < 1) throw InvalidArgument("need at least one Kraus operator");
  check_transfer_qubits(num_qubits);
  const Eigen::Index d = Eigen::Index{1} << num_qubits;
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd g(num_kraus * d, d);
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = 0; j < g.cols(); ++j)
      g(i, j) = std::complex<double>(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q =
      qr.householderQ() * Eigen::MatrixXcd::Identity(num_kraus * d, d);
  std::vector<Eigen::MatrixXcd> kraus;
  kraus.reserve(static_cast<std::size_t>(num_kraus));
  for (int i = 0; i < num_kraus; ++i)
    kraus.push_back(q.block(i * d, 0, d, d));
  return Channel::from_kraus(std::move(kraus));
}

}  // namespace plq
