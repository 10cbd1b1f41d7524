#include "plq/lindblad.hpp"

#include <cmath>
#include <limits>

#include <unsupported/Eigen/MatrixFunctions>

#include "plq/errors.hpp"
#include "plq/superop.hpp"

namespace plq {

namespace {

constexpr double kHermitianTol = 1e-12;

void check_hermitian(const Eigen::MatrixXcd& m, const char* what) {
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol * scale)
    throw InvalidArgument(std::string(what) + " must be Hermitian");
}

Eigen::MatrixXcd generator_superop(const LindbladGenerator& g) {
  const int n = g.num_qubits;
  const Eigen::Index d = Eigen::Index{1} << n;
  const superop::PauliBasis& basis = superop::pauli_basis(n);
  const Eigen::Index count = Eigen::Index{1} << (2 * n);
  const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(d, d);
  const std::complex<double> i1(0.0, 1.0);
  Eigen::MatrixXcd s =
      -i1 * (superop::kron(eye, g.hamiltonian) -
             superop::kron(g.hamiltonian.transpose(), eye));
  for (Eigen::Index a = 1; a < count; ++a) {
    for (Eigen::Index b = 1; b < count; ++b) {
      const std::complex<double> gab = g.kossakowski(a - 1, b - 1);
      if (gab == 0.0) continue;
      const Eigen::MatrixXcd& pa = basis.matrices[static_cast<std::size_t>(a)];
      const Eigen::MatrixXcd& pb = basis.matrices[static_cast<std::size_t>(b)];
      const Eigen::MatrixXcd ba = pb * pa;  // P_b^dagger P_a with Hermitian P
      s += gab * (superop::kron(pb.transpose(), pa) -
                  0.5 * superop::kron(eye, ba) -
                  0.5 * superop::kron(ba.transpose(), eye));
    }
  }
  return s;
}

}  // namespace

LindbladGenerator::LindbladGenerator(int n, Eigen::MatrixXcd h,
                                     Eigen::MatrixXcd gamma)
    : num_qubits(n), hamiltonian(std::move(h)), kossakowski(std::move(gamma)) {
  if (n < 1 || n > kMaxTransferQubits)
    throw InvalidArgument("generator qubit count out of range");
  const Eigen::Index d = Eigen::Index{1} << n;
  const Eigen::Index count = (Eigen::Index{1} << (2 * n)) - 1;
  if (hamiltonian.rows() != d || hamiltonian.cols() != d)
    throw InvalidArgument("Hamiltonian must be 2^n x 2^n");
  if (kossakowski.rows() != count || kossakowski.cols() != count)
    throw InvalidArgument("Kossakowski matrix must be (4^n - 1) square");
  check_hermitian(hamiltonian, "Hamiltonian");
  check_hermitian(kossakowski, "Kossakowski matrix");
}

Eigen::MatrixXd generator_transfer(const LindbladGenerator& g) {
  return superop::transfer_from_superop(generator_superop(g), g.num_qubits);
}

Channel propagate_constant(const LindbladGenerator& g, double t) {
  if (t < 0.0) throw InvalidArgument("propagation time must be nonnegative");
  const Eigen::MatrixXd lt = t * generator_transfer(g);
  return Channel::from_transfer(lt.exp());
}

Channel propagate_timedep(const GeneratorEvaluator& eval, double t,
                          int steps) {
  if (!eval) throw InvalidArgument("missing generator evaluator");
  if (t < 0.0) throw InvalidArgument("propagation time must be nonnegative");
  if (steps < 1) throw InvalidArgument("steps must be at least 1");
  const double dt = t / steps;
  Eigen::MatrixXd total;
  for (int k = 0; k < steps; ++k) {
    const double mid = (k + 0.5) * dt;
    const Eigen::MatrixXd step =
        Eigen::MatrixXd(dt * generator_transfer(eval(mid))).exp();
    if (k == 0)
      total = step;
    else
      total = (step * total).eval();
  }
  return Channel::from_transfer(std::move(total));
}

Eigen::MatrixXcd gate_frame_kossakowski(const Eigen::MatrixXcd& kossakowski,
                                        const Eigen::MatrixXcd& unitary) {
  const Channel conj = Channel::from_unitary(unitary);
  const int n = conj.num_qubits();
  const Eigen::Index count = (Eigen::Index{1} << (2 * n)) - 1;
  if (kossakowski.rows() != count || kossakowski.cols() != count)
    throw InvalidArgument(
        "Kossakowski matrix size does not match the unitary");
  const Eigen::MatrixXd sub =
      conj.transfer().block(1, 1, count, count);
  return sub * kossakowski * sub.transpose();
}

Eigen::MatrixXcd kossakowski_from_jumps(
    int num_qubits,
    const std::vector<std::pair<double, Eigen::MatrixXcd>>& jumps) {
  const Eigen::Index d = Eigen::Index{1} << num_qubits;
  const Eigen::Index count = (Eigen::Index{1} << (2 * num_qubits)) - 1;
  const superop::PauliBasis& basis = superop::pauli_basis(num_qubits);
  Eigen::MatrixXcd gamma = Eigen::MatrixXcd::Zero(count, count);
  for (const auto& [rate, jump] : jumps) {
    if (rate < 0.0) throw InvalidArgument("jump rates must be nonnegative");
    if (jump.rows() != d || jump.cols() != d)
      throw InvalidArgument("jump operator must be 2^n x 2^n");
    if (std::abs(jump.trace()) > 1e-12 * std::max(1.0, jump.cwiseAbs().maxCoeff()))
      throw InvalidArgument("jump operators must be traceless");
    Eigen::VectorXcd u(count);
    for (Eigen::Index a = 1; a <= count; ++a)
      u[a - 1] = (basis.matrices[static_cast<std::size_t>(a)] * jump).trace() /
                 static_cast<double>(d);
    gamma += rate * u * u.adjoint();
  }
  return gamma;
}

Channel error_channel(const Channel& phi, const GateContext& ctx) {
  if (ctx.num_qubits != phi.num_qubits())
    throw InvalidArgument("gate context does not match channel size");
  if (!ctx.unitary) throw InvalidArgument("missing unitary evaluator");
  const Channel gate = Channel::from_unitary(ctx.unitary(ctx.gate_time));
  // Conjugation transfers are orthogonal, so the inverse is the transpose.
  return Channel::from_transfer(gate.transfer().transpose() * phi.transfer());
}

std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> hamiltonian_dissipative_split(
    const Eigen::MatrixXd& gen) {
  if (gen.rows() != gen.cols())
    throw InvalidArgument("generator transfer matrix must be square");
  Eigen::Index dim = gen.rows();
  int n = 0;
  while ((Eigen::Index{1} << (2 * n)) < dim) ++n;
  if ((Eigen::Index{1} << (2 * n)) != dim || n == 0)
    throw InvalidArgument("generator dimension must be a power of four");
  const double scale = std::max(1.0, gen.cwiseAbs().maxCoeff());
  if (gen.row(0).cwiseAbs().maxCoeff() > 1e-9 * scale)
    throw InvalidArgument(
        "not a trace-preserving generator: row 0 is not zero");
  const Eigen::Index d = Eigen::Index{1} << n;

  const Eigen::MatrixXcd s = superop::superop_from_transfer(gen, n);
  const Eigen::MatrixXcd j = superop::choi_from_superop(s, d);
  const superop::PauliBasis& basis = superop::pauli_basis(n);
  const double d2 = std::pow(4.0, n);
  const Eigen::MatrixXcd c = basis.vr_row.adjoint() * j * basis.vr_row / d2;
  Eigen::MatrixXcd gamma = c.block(1, 1, dim - 1, dim - 1);
  gamma = (gamma + gamma.adjoint()).eval() / 2.0;

  // Subtract the dissipator; the remainder is the Hamiltonian commutator
  // (plus a trace part that vanishes for trace-preserving generators).
  const Eigen::MatrixXcd s_d = generator_superop(
      LindbladGenerator(n, Eigen::MatrixXcd::Zero(d, d), gamma));
  const Eigen::MatrixXcd s_h = s - s_d;
  // For S_H = -i(1 (x) H - H^T (x) 1):  sum_l S_H[(k + l d), (i + l d)]
  //   = -i (d H_ki - tr(H) delta_ki).
  Eigen::MatrixXcd contracted = Eigen::MatrixXcd::Zero(d, d);
  for (Eigen::Index k = 0; k < d; ++k)
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index l = 0; l < d; ++l)
        contracted(k, i) += s_h(k + l * d, i + l * d);
  Eigen::MatrixXcd h =
      std::complex<double>(0.0, 1.0) * contracted / static_cast<double>(d);
  h -= (h.trace() / static_cast<double>(d)) *
       Eigen::MatrixXcd::Identity(d, d);
  h = (h + h.adjoint()).eval() / 2.0;

  const Eigen::MatrixXd rebuilt =
      generator_transfer(LindbladGenerator(n, h, gamma));
  const double residual = (rebuilt - gen).cwiseAbs().maxCoeff();
  if (residual > 1e-10 * scale)
    throw NumericError(
        "generator does not admit a Hamiltonian + dissipator split "
        "(reconstruction residual " +
        std::to_string(residual) + ")");
  return {std::move(h), std::move(gamma)};
}

CsmVerdict csm_test_general(const Channel& ch, double tol) {
  const Eigen::MatrixXd& t = ch.transfer();
  const double scale = std::max(1.0, t.cwiseAbs().maxCoeff());
  {
    Eigen::RowVectorXd top = t.row(0);
    top(0) -= 1.0;
    if (top.cwiseAbs().maxCoeff() > 1e-9 * scale)
      throw InvalidArgument("channel is not trace preserving");
  }
  const Eigen::VectorXcd eigs = Eigen::EigenSolver<Eigen::MatrixXd>(t, false)
                                    .eigenvalues();
  for (Eigen::Index i = 0; i < eigs.size(); ++i) {
    const std::complex<double> e = eigs[i];
    if (std::abs(e) < 1e-12 * scale)
      throw InconclusiveError(
          "channel logarithm undefined: transfer matrix has a zero "
          "eigenvalue");
    if (e.real() < 0.0 && std::abs(e.imag()) <= 1e-12 * std::abs(e))
      throw InconclusiveError(
          "inconclusive: principal branch unavailable (transfer eigenvalue "
          "on the negative real axis)");
  }
  const Eigen::MatrixXcd log_t = Eigen::MatrixXcd(
      t.cast<std::complex<double>>()).log();
  CsmVerdict verdict;
  verdict.tol = tol;
  verdict.witness_kind = CsmVerdict::WitnessKind::kKossakowskiSpectrum;
  const double imag_residue = log_t.imag().cwiseAbs().maxCoeff();
  if (imag_residue > 1e-8 * std::max(1.0, log_t.cwiseAbs().maxCoeff())) {
    // Principal log exists but is not a real transfer matrix, so it is not
    // Hermiticity-preserving and no Lindblad form exists on this branch.
    verdict.is_csm = false;
    verdict.min_value = -std::numeric_limits<double>::infinity();
    return verdict;
  }
  const auto [h, gamma] = hamiltonian_dissipative_split(log_t.real());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gamma,
                                                     Eigen::EigenvaluesOnly);
  verdict.kossakowski_spectrum = es.eigenvalues();
  verdict.min_value = es.eigenvalues().minCoeff();
  const double gamma_scale =
      1.0 + std::abs(es.eigenvalues().cwiseAbs().maxCoeff());
  verdict.is_csm = verdict.min_value >= -tol * gamma_scale;
  return verdict;
}

}  // namespace plq
