#include "plq/scenarios.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <thread>

#include <unsupported/Eigen/MatrixFunctions>

#include "plq/errors.hpp"

namespace plq {

namespace {

using std::numbers::pi;

Eigen::Matrix2cd pauli_x() {
  Eigen::Matrix2cd m;
  m << 0, 1, 1, 0;
  return m;
}

Eigen::Matrix2cd pauli_z() {
  Eigen::Matrix2cd m;
  m << 1, 0, 0, -1;
  return m;
}

Eigen::Matrix2cd sigma_minus() {
  Eigen::Matrix2cd m;
  m << 0, 1, 0, 0;
  return m;
}

Eigen::Matrix2cd rotation_y(double angle) {
  Eigen::Matrix2cd m;
  const double c = std::cos(angle / 2), s = std::sin(angle / 2);
  m << c, -s, s, c;
  return m;
}

// exp(-i theta X / 2)
Eigen::Matrix2cd rotation_x(double angle) {
  const std::complex<double> i1(0.0, 1.0);
  const double c = std::cos(angle / 2), s = std::sin(angle / 2);
  Eigen::Matrix2cd m;
  m << c, -i1 * s, -i1 * s, c;
  return m;
}

void require_nonnegative(double v, const char* what) {
  if (v < 0.0 || !std::isfinite(v))
    throw InvalidArgument(std::string(what) + " must be nonnegative");
}

LambdaTriple triple_from_params(const PLParams& params, double imag_tol) {
  if (params.num_qubits() != 1)
    throw InvalidArgument("lambda triple is a single-qubit notion");
  if (params.max_imag() > imag_tol)
    throw NumericError("twirled PL parameters are not real");
  LambdaTriple t;
  t.x = params.lambda_of(PauliWord::from_label("X")).real();
  t.y = params.lambda_of(PauliWord::from_label("Y")).real();
  t.z = params.lambda_of(PauliWord::from_label("Z")).real();
  return t;
}

}  // namespace

NoiseRates NoiseRates::from_times(double t1, double t2_star) {
  if (t1 <= 0.0 || t2_star <= 0.0)
    throw InvalidArgument("T1 and T2* must be positive");
  NoiseRates rates;
  rates.gamma = 1.0 / t1;
  rates.gamma_phi = 1.0 / t2_star - 0.5 / t1;
  if (rates.gamma_phi < 0.0)
    throw InvalidArgument("T2* exceeds 2 T1: negative dephasing rate");
  return rates;
}

LambdaTriple hadamard_dephasing_lambda(double gphi_t) {
  require_nonnegative(gphi_t, "gamma_phi * t");
  LambdaTriple t;
  t.x = t.z = gphi_t / 2.0;
  t.y = -0.5 * log_cosh(gphi_t);
  return t;
}

LambdaTriple hadamard_dephasing_relaxation_lambda(double gphi_t, double g_t) {
  require_nonnegative(gphi_t, "gamma_phi * t");
  require_nonnegative(g_t, "gamma * t");
  LambdaTriple t;
  t.x = t.z = gphi_t / 2.0 + g_t / 8.0;
  t.y = g_t / 4.0 - 0.5 * log_cosh(gphi_t - g_t / 4.0);
  return t;
}

LindbladGenerator hadamard_dephasing_generator(double gamma_phi) {
  return hadamard_dephasing_relaxation_generator(gamma_phi, 0.0);
}

LindbladGenerator hadamard_dephasing_relaxation_generator(double gamma_phi,
                                                          double gamma) {
  require_nonnegative(gamma_phi, "gamma_phi");
  require_nonnegative(gamma, "gamma");
  const Eigen::Matrix2cd hadamard_jump =
      (pauli_x() + pauli_z()) / std::sqrt(2.0);
  const Eigen::Matrix2cd tilted_relax =
      rotation_y(pi / 4) * sigma_minus() * rotation_y(-pi / 4);
  const Eigen::MatrixXcd gamma_matrix = kossakowski_from_jumps(
      1, {{gamma_phi, hadamard_jump}, {gamma, tilted_relax}});
  return LindbladGenerator(1, Eigen::MatrixXcd::Zero(2, 2), gamma_matrix);
}

RxGateSetup rx_gate_setup(const NoiseRates& rates, double drive,
                          double gate_time) {
  if (drive <= 0.0) throw InvalidArgument("drive strength must be positive");
  if (gate_time <= 0.0) throw InvalidArgument("gate time must be positive");
  require_nonnegative(rates.gamma, "gamma");
  require_nonnegative(rates.gamma_phi, "gamma_phi");
  const Eigen::MatrixXcd h = drive * pauli_x() / 2.0;
  const Eigen::MatrixXcd gamma_matrix = kossakowski_from_jumps(
      1, {{rates.gamma, sigma_minus()}, {rates.gamma_phi, pauli_z()}});
  RxGateSetup setup{
      LindbladGenerator(1, h, gamma_matrix),
      GateContext{1, [drive](double t) { return rotation_x(drive * t); },
                  gate_time},
      {}};
  // In the gate frame the jumps are conjugated by U(t)^dagger, so the
  // Kossakowski transform takes the inverse gate unitary.
  setup.gate_frame = [drive, gamma_matrix](double t) {
    const Eigen::MatrixXcd tilted =
        gate_frame_kossakowski(gamma_matrix, rotation_x(-drive * t));
    return LindbladGenerator(1, Eigen::MatrixXcd::Zero(2, 2), tilted);
  };
  return setup;
}

Channel sqrtx_error_channel(double g_tg, double gphi_tg) {
  require_nonnegative(g_tg, "gamma * t_g");
  require_nonnegative(gphi_tg, "gamma_phi * t_g");
  if (g_tg > 50.0 || gphi_tg > 50.0)
    throw InvalidArgument("rates outside the dense-numerics range");
  const RxGateSetup setup =
      rx_gate_setup(NoiseRates{g_tg, gphi_tg}, pi / 2, 1.0);
  const Channel noisy_gate = propagate_constant(setup.lab, 1.0);
  return error_channel(noisy_gate, setup.gate);
}

LambdaTriple sqrtx_lambda_numeric(double g_tg, double gphi_tg) {
  const Channel err = sqrtx_error_channel(g_tg, gphi_tg);
  return triple_from_params(lambda_from_f(err.pauli_eigenvalues()), 1e-8);
}

LambdaTriple sqrtx_lambda_second_order(double g_tg, double gphi_tg,
                                       double theta) {
  if (theta <= 0.0) throw InvalidArgument("theta must be positive");
  const double sinc2 = std::sin(2 * theta) / (2 * theta);
  const double s4 = std::pow(std::sin(theta), 4);
  LambdaTriple t;
  t.x = g_tg / 4.0 -
        (s4 / (4.0 * theta * theta)) * std::pow(gphi_tg - g_tg / 4.0, 2);
  t.y = (g_tg / 8.0) * (1.0 + sinc2) + (gphi_tg / 2.0) * (1.0 - sinc2);
  t.z = (g_tg / 8.0) * (1.0 - sinc2) + (gphi_tg / 2.0) * (1.0 + sinc2);
  return t;
}

namespace {

// Gauss-Legendre nodes and weights on [-1, 1], Newton iteration on the
// Legendre recurrence.
std::vector<std::pair<double, double>> gauss_legendre(int m) {
  std::vector<std::pair<double, double>> out(static_cast<std::size_t>(m));
  for (int i = 0; i < (m + 1) / 2; ++i) {
    double x = std::cos(pi * (i + 0.75) / (m + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= m; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = m * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    out[static_cast<std::size_t>(i)] = {-x, w};
    out[static_cast<std::size_t>(m - 1 - i)] = {x, w};
  }
  return out;
}

Eigen::MatrixXd dissipator_at(const Eigen::MatrixXd& t_h,
                              const Eigen::MatrixXd& t_d, double s) {
  const Eigen::MatrixXd left = Eigen::MatrixXd(-s * t_h).exp();
  const Eigen::MatrixXd right = Eigen::MatrixXd(s * t_h).exp();
  return left * t_d * right;
}

}  // namespace

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> cumulant_c1_c2(
    const Eigen::MatrixXd& t_h, const Eigen::MatrixXd& t_d, double gate_time,
    int nodes) {
  if (nodes < 4) throw InvalidArgument("quadrature needs at least 4 nodes");
  if (gate_time <= 0.0) throw InvalidArgument("gate time must be positive");
  if (t_h.rows() != t_h.cols() || t_d.rows() != t_d.cols() ||
      t_h.rows() != t_d.rows())
    throw InvalidArgument("transfer matrices must be square and equal size");
  const auto rule = gauss_legendre(nodes);
  const Eigen::Index dim = t_h.rows();
  Eigen::MatrixXd c1 = Eigen::MatrixXd::Zero(dim, dim);
  Eigen::MatrixXd c2 = Eigen::MatrixXd::Zero(dim, dim);
  for (const auto& [x1, w1] : rule) {
    const double s1 = 0.5 * gate_time * (x1 + 1.0);
    const double scale1 = 0.5 * gate_time * w1;
    const Eigen::MatrixXd d1 = dissipator_at(t_h, t_d, s1);
    c1 += scale1 * d1;
    Eigen::MatrixXd inner = Eigen::MatrixXd::Zero(dim, dim);
    for (const auto& [x2, w2] : rule) {
      const double s2 = 0.5 * s1 * (x2 + 1.0);
      const Eigen::MatrixXd d2 = dissipator_at(t_h, t_d, s2);
      inner += (0.5 * s1 * w2) * (d1 * d2 - d2 * d1);
    }
    c2 += 0.5 * scale1 * inner;
  }
  return {std::move(c1), std::move(c2)};
}

LambdaTriple rx_lambda_cumulant(double g_tg, double gphi_tg, double theta,
                                int nodes) {
  require_nonnegative(g_tg, "gamma * t_g");
  require_nonnegative(gphi_tg, "gamma_phi * t_g");
  if (theta <= 0.0) throw InvalidArgument("theta must be positive");
  const RxGateSetup setup =
      rx_gate_setup(NoiseRates{g_tg, gphi_tg}, theta, 1.0);
  const Eigen::MatrixXd t_h = generator_transfer(LindbladGenerator(
      1, setup.lab.hamiltonian,
      Eigen::MatrixXcd::Zero(3, 3)));
  const Eigen::MatrixXd t_d = generator_transfer(LindbladGenerator(
      1, Eigen::MatrixXcd::Zero(2, 2), setup.lab.kossakowski));
  const auto [c1, c2] = cumulant_c1_c2(t_h, t_d, 1.0, nodes);
  const Eigen::MatrixXd second = c1 * c1 / 2.0 + c2;
  // ln f_k to second order in the rates.
  Eigen::Vector4d logf;
  for (int k = 0; k < 4; ++k) {
    const double f1 = c1(k, k);
    const double f2 = second(k, k);
    logf[k] = f1 + f2 - f1 * f1 / 2.0;
  }
  LambdaTriple t;
  t.x = 0.25 * (logf[1] - logf[2] - logf[3]);
  t.z = 0.25 * (-logf[1] + logf[2] - logf[3]);
  t.y = 0.25 * (-logf[1] - logf[2] + logf[3]);
  return t;
}

bool csmb_criterion(double g_t, double gphi_t, Scenario which) {
  require_nonnegative(g_t, "gamma * t");
  require_nonnegative(gphi_t, "gamma_phi * t");
  const double factor =
      which == Scenario::kSqrtX ? std::pow(2.0 / pi, 2) : 1.0;
  return g_t < factor * gphi_t * gphi_t;
}

bool is_clifford_angle(double theta) {
  const double m = theta / (pi / 2);
  return std::abs(m - std::round(m)) < 1e-9;
}

std::string region_name(Region r) {
  switch (r) {
    case Region::kCsmB:
      return "CSMB";
    case Region::kCsmC:
      return "CSMC";
    case Region::kCsmI:
      return "CSMI";
    case Region::kNonCsmC:
      return "nCSMC";
    case Region::kInconclusive:
      return "INCONCLUSIVE";
    case Region::kError:
      return "ERROR";
  }
  return "ERROR";
}

namespace {

SweepPoint sweep_point(double g_tg, double gphi_tg, double tol) {
  SweepPoint point;
  point.g_tg = g_tg;
  point.gphi_tg = gphi_tg;
  point.min_kossakowski_eig = std::numeric_limits<double>::quiet_NaN();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  point.lambda = {nan, nan, nan};
  try {
    const Channel err = sqrtx_error_channel(g_tg, gphi_tg);

    bool pre_inconclusive = false;
    bool pre_csm = false;
    try {
      const CsmVerdict pre = csm_test_general(err, tol);
      pre_csm = pre.is_csm;
      point.min_kossakowski_eig = pre.min_value;
      point.pretwirl_csm = pre.is_csm ? 1 : 0;
    } catch (const InconclusiveError&) {
      pre_inconclusive = true;
      point.pretwirl_csm = -1;
    }

    const CsmVerdict post = classify_pauli(err.pauli_eigenvalues(), tol);
    if (post.lambda_witness) {
      const PLParams& params = *post.lambda_witness;
      point.lambda.x = params.lambda_of(PauliWord::from_label("X")).real();
      point.lambda.y = params.lambda_of(PauliWord::from_label("Y")).real();
      point.lambda.z = params.lambda_of(PauliWord::from_label("Z")).real();
    }

    if (pre_inconclusive) {
      point.region = Region::kInconclusive;
    } else if (pre_csm) {
      point.region = post.is_csm ? Region::kCsmC : Region::kCsmB;
    } else {
      point.region = post.is_csm ? Region::kCsmI : Region::kNonCsmC;
    }
  } catch (const Error& e) {
    point.region = Region::kError;
    point.error = e.what();
  }
  return point;
}

}  // namespace

SweepResult sweep_phase_diagram(const SweepSpec& spec) {
  if (spec.nx < 1 || spec.ny < 1)
    throw InvalidArgument("sweep grid must have at least one point per axis");
  if (spec.gmax < 0.0 || spec.gpmax < 0.0)
    throw InvalidArgument("sweep ranges must be nonnegative");
  SweepResult result;
  result.spec = spec;
  const std::size_t total =
      static_cast<std::size_t>(spec.nx) * static_cast<std::size_t>(spec.ny);
  result.points.resize(total);

  int workers = spec.workers;
  if (workers <= 0)
    workers = static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, 256);

  std::atomic<std::size_t> next{0};
  auto run = [&]() {
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= total) return;
      const int i = static_cast<int>(idx) / spec.ny;
      const int j = static_cast<int>(idx) % spec.ny;
      const double g =
          spec.nx == 1 ? 0.0 : spec.gmax * i / (spec.nx - 1);
      const double gp =
          spec.ny == 1 ? 0.0 : spec.gpmax * j / (spec.ny - 1);
      result.points[idx] = sweep_point(g, gp, spec.tol);
    }
  };
  if (workers == 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& th : pool) th.join();
  }
  return result;
}

std::string sweep_to_csv(const SweepResult& result) {
  std::string csv =
      "gamma_tg,gammaphi_tg,region,lambda_x,lambda_y,lambda_z,pretwirl_csm,"
      "min_kossakowski_eig\n";
  char buf[64];
  const auto num = [&buf](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  for (const SweepPoint& p : result.points) {
    csv += num(p.g_tg) + ',' + num(p.gphi_tg) + ',' + region_name(p.region) +
           ',' + num(p.lambda.x) + ',' + num(p.lambda.y) + ',' +
           num(p.lambda.z) + ',';
    csv += p.pretwirl_csm == 1   ? "true"
           : p.pretwirl_csm == 0 ? "false"
                                 : "inconclusive";
    csv += ',' + num(p.min_kossakowski_eig) + '\n';
  }
  return csv;
}

}  // namespace plq
