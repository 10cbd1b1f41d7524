#ifndef PLQ_SCENARIOS_HPP
#define PLQ_SCENARIOS_HPP

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "plq/lindblad.hpp"

namespace plq {

// Relaxation rate gamma = 1/T1 and pure dephasing rate
// gamma_phi = 1/T2* - 1/(2 T1), both in inverse time units.
struct NoiseRates {
  double gamma = 0.0;
  double gamma_phi = 0.0;

  static NoiseRates from_times(double t1, double t2_star);
};

// Single-qubit PL parameters in axis order (x, y, z).
struct LambdaTriple {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

// --- Hadamard dephasing: jump (X+Z)/sqrt(2) at rate gamma_phi ---

// Closed form of the twirled channel after time t with x = gamma_phi * t:
// lambda_x = lambda_z = x/2, lambda_y = -log(cosh x)/2 (always negative for
// x > 0).
LambdaTriple hadamard_dephasing_lambda(double gphi_t);

// Extended with a tilted relaxation jump R_y(pi/4) sigma_- R_y(-pi/4) at
// rate gamma: lambda_x = lambda_z = x/2 + y/8,
// lambda_y = y/4 - log(cosh(x - y/4))/2, with y = gamma * t.
LambdaTriple hadamard_dephasing_relaxation_lambda(double gphi_t, double g_t);

// The corresponding generator (H = 0), for end-to-end numeric checks.
LindbladGenerator hadamard_dephasing_generator(double gamma_phi);
LindbladGenerator hadamard_dephasing_relaxation_generator(double gamma_phi,
                                                          double gamma);

// --- Resonantly driven R_x(theta) gate with dephasing and relaxation ---

// Lab frame: H = A X / 2, jumps Z (rate gamma_phi) and sigma_- (rate
// gamma). The gate frame evaluator carries the time-dependent Kossakowski
// matrix of the conjugated jumps; both routes produce the same error
// channel at t_g.
struct RxGateSetup {
  LindbladGenerator lab;
  GateContext gate;
  GeneratorEvaluator gate_frame;
};

RxGateSetup rx_gate_setup(const NoiseRates& rates, double drive,
                          double gate_time);

// Error channel of the sqrt(X) gate (theta = pi/2, t_g = 1) at the given
// dimensionless rates; exact constant-generator route.
Channel sqrtx_error_channel(double g_tg, double gphi_tg);

// PL parameters of the twirled sqrt(X) error channel. Exact up to linear
// algebra; lambda_y and lambda_z equal g_tg/8 + gphi_tg/2 identically.
LambdaTriple sqrtx_lambda_numeric(double g_tg, double gphi_tg);

// Second-order closed form at general rotation angle theta:
//   lambda_x     ~ g/4 - (sin^4 th / 4 th^2)(gp - g/4)^2
//   lambda_{y,z} ~ (g/8)(1 +- sin 2th / 2th) + (gp/2)(1 -+ sin 2th / 2th).
LambdaTriple sqrtx_lambda_second_order(double g_tg, double gphi_tg,
                                       double theta);

// First and second cumulants of the interaction-picture dissipator:
//   C1 = int_0^tg T_D(s) ds,  T_D(s) = e^{-s T_H} T_D e^{s T_H},
//   C2 = 1/2 int_0^tg ds1 int_0^s1 ds2 [T_D(s1), T_D(s2)],
// by Gauss-Legendre quadrature with the given node count (>= 4).
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> cumulant_c1_c2(
    const Eigen::MatrixXd& t_h, const Eigen::MatrixXd& t_d, double gate_time,
    int nodes);

// Second-order lambda of the driven gate via the cumulant route
// (1 + C1 + C1^2/2 + C2 diagonal, log expanded to second order).
LambdaTriple rx_lambda_cumulant(double g_tg, double gphi_tg, double theta,
                                int nodes);

enum class Scenario { kHadamard, kSqrtX };

// Small-rate criterion for a negative twirled parameter: g t < (gp t)^2 for
// the Hadamard scenario, g t < (2/pi)^2 (gp t)^2 for the sqrt(X) gate.
// Valid for rates up to roughly 0.3.
bool csmb_criterion(double g_t, double gphi_t, Scenario which);

// Angles m pi/2 give Clifford gates, the only ones twirlable with the
// standard word-insertion scheme.
bool is_clifford_angle(double theta);

// --- Phase-diagram sweep over (gamma t_g, gamma_phi t_g) ---

enum class Region {
  kCsmB,          // twirling breaks the CSM property
  kCsmC,          // CSM conserved
  kCsmI,          // CSM instated
  kNonCsmC,       // non-CSM conserved
  kInconclusive,  // pre-twirl verdict unavailable (principal branch)
  kError,         // per-point failure, message recorded
};

std::string region_name(Region r);

struct SweepSpec {
  int nx = 60;
  int ny = 60;
  double gmax = 3.0;
  double gpmax = 3.0;
  int workers = 0;  // 0 = hardware concurrency
  double tol = kDefaultCsmTol;
};

struct SweepPoint {
  double g_tg = 0.0;
  double gphi_tg = 0.0;
  Region region = Region::kError;
  LambdaTriple lambda;           // real parts of the twirled PL parameters
  int pretwirl_csm = -1;         // 1 yes, 0 no, -1 inconclusive/unavailable
  double min_kossakowski_eig = 0.0;  // NaN when unavailable
  std::string error;
};

struct SweepResult {
  SweepSpec spec;
  std::vector<SweepPoint> points;  // row-major over (g index, gp index)
};

SweepResult sweep_phase_diagram(const SweepSpec& spec);

// CSV with columns gamma_tg, gammaphi_tg, region, lambda_x, lambda_y,
// lambda_z, pretwirl_csm, min_kossakowski_eig; floats at 17 significant
// digits.
std::string sweep_to_csv(const SweepResult& result);

}  // namespace plq

#endif
