// Acceptance suite: end-to-end checks of the library against its closed
// forms and oracles, one pass/fail line per criterion. Returns the number
// of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "plq/errors.hpp"
#include "plq/json_io.hpp"
#include "plq/lindblad.hpp"
#include "plq/plmodel.hpp"
#include "plq/qem.hpp"
#include "plq/scenarios.hpp"
#include "support.hpp"

using namespace plq;
using std::numbers::pi;

namespace {

struct Failure {
  std::string message;
};

void require(bool ok, const std::string& message) {
  if (!ok) throw Failure{message};
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

PauliWord word(const char* label) { return PauliWord::from_label(label); }

LambdaTriple triple_of(const PLParams& pl) {
  return {pl.lambda_of(word("X")).real(), pl.lambda_of(word("Y")).real(),
          pl.lambda_of(word("Z")).real()};
}

LambdaTriple pipeline_lambda(const LindbladGenerator& g, double t) {
  return triple_of(lambda_from_f(twirl(propagate_constant(g, t)).eigenvalues()));
}

double max_dev(const LambdaTriple& a, const LambdaTriple& b) {
  return std::max({std::abs(a.x - b.x), std::abs(a.y - b.y),
                   std::abs(a.z - b.z)});
}

// --- criterion bodies -------------------------------------------------

std::string criterion_1_hadamard_closed_form() {
  double worst = 0.0;
  for (double x : {0.1, 0.5, 1.0, 2.0}) {
    const LambdaTriple closed = hadamard_dephasing_lambda(x);
    const LambdaTriple numeric =
        pipeline_lambda(hadamard_dephasing_generator(x), 1.0);
    worst = std::max(worst, max_dev(closed, numeric));
  }
  require(worst <= 1e-10, "max deviation " + fmt(worst) + " > 1e-10");
  return "max deviation " + fmt(worst);
}

std::string criterion_2_relaxation_closed_form() {
  double worst = 0.0;
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      const double x = i / 4.0, y = j / 4.0;
      const LambdaTriple closed = hadamard_dephasing_relaxation_lambda(x, y);
      const LambdaTriple numeric =
          pipeline_lambda(hadamard_dephasing_relaxation_generator(x, y), 1.0);
      worst = std::max(worst, max_dev(closed, numeric));
    }
  }
  require(worst <= 1e-10, "max deviation " + fmt(worst) + " > 1e-10");

  const double y_neg = hadamard_dephasing_relaxation_lambda(0.2, 0.01).y;
  const double y_pos = hadamard_dephasing_relaxation_lambda(0.2, 0.1).y;
  require(std::abs(y_neg - (-0.0071888188919752546)) < 1e-12,
          "lambda_y(0.2, 0.01) = " + fmt(y_neg));
  require(std::abs(y_pos - 0.017382512570584139) < 1e-12,
          "lambda_y(0.2, 0.1) = " + fmt(y_pos));
  require(y_neg < 0.0 && y_pos > 0.0, "sign change not observed");
  return "max deviation " + fmt(worst) + ", sign change at gamma t in "
         "(0.01, 0.1)";
}

std::string criterion_3_sqrtx_exact_yz() {
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    for (int j = 0; j < 20; ++j) {
      const double g = 2.0 * i / 19.0, gp = 2.0 * j / 19.0;
      const LambdaTriple lam = sqrtx_lambda_numeric(g, gp);
      const double exact = g / 8.0 + gp / 2.0;
      worst = std::max({worst, std::abs(lam.y - exact),
                        std::abs(lam.z - exact)});
    }
  }
  require(worst <= 1e-10, "max deviation " + fmt(worst) + " > 1e-10");
  return "max deviation " + fmt(worst) + " over the 20x20 grid";
}

std::string criterion_4_third_order_scaling() {
  const double e1 = std::abs(sqrtx_lambda_numeric(0.04, 0.04).x -
                             sqrtx_lambda_second_order(0.04, 0.04, pi / 2).x);
  const double e2 = std::abs(sqrtx_lambda_numeric(0.02, 0.02).x -
                             sqrtx_lambda_second_order(0.02, 0.02, pi / 2).x);
  const double ratio = e1 / e2;
  require(ratio >= 6.0 && ratio <= 10.0,
          "halving ratio " + fmt(ratio) + " outside [6, 10] (the lambda_x "
          "error has no cubic term at theta = pi/2; the measured decay is "
          "fourth order)");
  return "halving ratio " + fmt(ratio);
}

double bisect(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo);
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = f(mid);
    if ((flo <= 0.0) == (fmid <= 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::string criterion_5_boundary_agreement() {
  std::string detail;
  for (double v : {0.05, 0.1, 0.2, 0.3}) {
    const double numeric_root = bisect(
        [v](double u) { return sqrtx_lambda_numeric(u, v).x; }, 1e-9, 0.5);
    const double second_root = bisect(
        [v](double u) {
          return u / 4.0 - std::pow((v - u / 4.0) / pi, 2);
        },
        1e-9, 0.5);
    const double rel = std::abs(numeric_root - second_root) / second_root;
    require(rel <= 0.10, "gphi_tg = " + fmt(v) + ": crossing " +
                             fmt(numeric_root) + " vs root " +
                             fmt(second_root) + " deviates " + fmt(rel));
    if (!detail.empty()) detail += ", ";
    detail += fmt(100.0 * rel) + "%";
  }
  return "relative deviations " + detail;
}

Region region_at(double g, double gp, double tol) {
  const Channel err = sqrtx_error_channel(g, gp);
  bool pre_csm = false;
  bool inconclusive = false;
  try {
    pre_csm = csm_test_general(err, tol).is_csm;
  } catch (const InconclusiveError&) {
    inconclusive = true;
  }
  const bool post_csm = classify_pauli(err.pauli_eigenvalues(), tol).is_csm;
  if (inconclusive) return Region::kInconclusive;
  if (pre_csm) return post_csm ? Region::kCsmC : Region::kCsmB;
  return post_csm ? Region::kCsmI : Region::kNonCsmC;
}

std::string criterion_6_phase_diagram() {
  SweepSpec spec;  // 60x60 over [0,3]^2
  const SweepResult result = sweep_phase_diagram(spec);
  std::set<Region> seen;
  for (const SweepPoint& p : result.points) seen.insert(p.region);
  require(seen.count(Region::kCsmB) == 1, "CSMB missing from the sweep");
  require(seen.count(Region::kCsmC) == 1, "CSMC missing from the sweep");
  require(seen.count(Region::kCsmI) == 1, "CSMI missing from the sweep");
  require(seen.count(Region::kNonCsmC) == 1, "nCSMC missing from the sweep");
  require(region_at(0.001, 0.1, spec.tol) == Region::kCsmB,
          "(0.001, 0.1) is not in the CSMB region");
  require(region_at(0.5, 0.1, spec.tol) == Region::kCsmC,
          "(0.5, 0.1) is not in the CSMC region");
  std::size_t inconclusive = 0, errors = 0;
  for (const SweepPoint& p : result.points) {
    inconclusive += p.region == Region::kInconclusive;
    errors += p.region == Region::kError;
  }
  std::ostringstream os;
  os << "all four regions present; " << inconclusive << " inconclusive, "
     << errors << " error points";
  return os.str();
}

std::string criterion_7_bijection_and_prop2() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> lam(-0.3, 1.0);
  std::uniform_real_distribution<double> fdist(0.05, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + trial % 3;
    const Eigen::Index count = Eigen::Index{1} << (2 * n);
    Eigen::VectorXd lambda(count - 1);
    std::vector<PauliWord> support;
    for (Eigen::Index a = 1; a < count; ++a) {
      support.push_back(PauliWord::from_index(n, static_cast<std::uint64_t>(a)));
      lambda[a - 1] = lam(rng);
    }
    const PLParams pl = PLParams::from_real(n, support, lambda);
    const PauliVector f = f_from_lambda(pl);
    const PLParams back = lambda_from_f(f);
    worst = std::max(worst,
                     (back.lambda() - pl.lambda()).cwiseAbs().maxCoeff());
    // f -> p -> f through the Walsh-Hadamard pair.
    const PauliVector p = walsh_hadamard_f_to_p(f);
    const PauliVector f2 = walsh_hadamard_p_to_f(p);
    worst = std::max(worst, (f2.values() - f.values()).cwiseAbs().maxCoeff());
  }
  require(worst <= 1e-12, "round-trip deviation " + fmt(worst) + " > 1e-12");

  int disagreements = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const PauliVector f = test::random_positive_f(1, rng);
    const bool pauli_route = classify_pauli(f).is_csm;
    const bool general_route =
        csm_test_general(PauliChannel(f).channel()).is_csm;
    disagreements += pauli_route != general_route;
  }
  require(disagreements == 0,
          std::to_string(disagreements) + " tester disagreements");

  std::normal_distribution<double> gauss(0.0, 0.3);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 2;
    const Eigen::Index count = (Eigen::Index{1} << (2 * n)) - 1;
    Eigen::MatrixXcd a(count, count);
    for (Eigen::Index i = 0; i < count; ++i)
      for (Eigen::Index j = 0; j < count; ++j)
        a(i, j) = std::complex<double>(gauss(rng), gauss(rng));
    const Eigen::MatrixXcd gamma = a * a.adjoint();
    Eigen::MatrixXcd h(Eigen::Index{1} << n, Eigen::Index{1} << n);
    for (Eigen::Index i = 0; i < h.rows(); ++i)
      for (Eigen::Index j = 0; j < h.cols(); ++j)
        h(i, j) = std::complex<double>(gauss(rng), gauss(rng));
    h = (h + h.adjoint()).eval() / 2.0;
    const Channel ch =
        propagate_constant(LindbladGenerator(n, h, gamma), 1.0);
    require(csm_test_general(ch).is_csm,
            "a Lindblad-form exponential classified non-CSM");
  }
  return "round trips " + fmt(worst) + ", testers agree on 1000 channels, 50 "
         "exponentials CSM";
}

std::string criterion_8_twirl_oracle() {
  std::mt19937_64 rng(4096);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 2;
    const Channel ch = random_cptp(n, 2 + trial % 3, rng);
    const Eigen::MatrixXd avg = test::brute_force_twirl_transfer(ch);
    const Eigen::MatrixXd diag = twirl(ch).channel().transfer();
    worst = std::max(worst, (avg - diag).cwiseAbs().maxCoeff());
  }
  require(worst <= 1e-12, "max deviation " + fmt(worst) + " > 1e-12");
  return "max deviation " + fmt(worst) + " over 100 channels";
}

std::string criterion_9_qem_oracle() {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> lam(-0.25, 0.6);
  double worst = 0.0;
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + trial % 3;
    const std::uint64_t count = std::uint64_t{1} << (2 * n);
    std::set<std::uint64_t> indices;
    while (indices.size() < std::min<std::size_t>(8, count - 1))
      indices.insert(1 + rng() % (count - 1));
    std::vector<PauliWord> support;
    Eigen::VectorXd lambda(static_cast<Eigen::Index>(indices.size()));
    Eigen::Index i = 0;
    bool has_negative = false;
    for (std::uint64_t idx : indices) {
      support.push_back(PauliWord::from_index(n, idx));
      lambda[i] = lam(rng);
      has_negative = has_negative || lambda[i] < 0.0;
      ++i;
    }
    if (!has_negative) lambda[0] = -0.1;
    const PLParams pl = PLParams::from_real(n, support, lambda);
    const Channel via_plan = expected_map(build_plan(pl, 1.0));
    const Eigen::VectorXcd f = f_from_lambda_complex(pl);
    worst = std::max(
        worst,
        (via_plan.transfer().diagonal() - f.real()).cwiseAbs().maxCoeff());
  }
  require(worst <= 1e-12, "expected-map deviation " + fmt(worst) + " > 1e-12");

  // beta = -1 sampling undoes Z dephasing on |+>.
  Eigen::VectorXd lz(1);
  lz << 0.1;
  const PLParams deph = PLParams::from_real(1, {word("Z")}, lz);
  const Channel noisy = pl_channel(deph).channel.channel();
  const MitigationResult good =
      mitigation_estimate(noisy, deph, -1.0, pauli_matrix(word("X")),
                          named_state(1, "plus"), 100000, 7);
  require(std::abs(good.estimate - 1.0) <= 3.0 * good.standard_error,
          "well-characterized estimate off by " +
              fmt(std::abs(good.estimate - 1.0) / good.standard_error) +
              " standard errors");

  // The nonnegativity-clamped model leaves a visible bias.
  Eigen::VectorXd truth_lambda(3);
  truth_lambda << 0.5, -0.21689041524151359, 0.5;
  const PLParams truth = PLParams::from_real(
      1, {word("X"), word("Y"), word("Z")}, truth_lambda);
  Eigen::VectorXd clamped_lambda(3);
  clamped_lambda << 0.5, 0.0, 0.5;
  const PLParams clamped = PLParams::from_real(
      1, {word("X"), word("Y"), word("Z")}, clamped_lambda);
  const Channel hadamard_channel = pl_channel(truth).channel.channel();
  const MitigationResult biased =
      mitigation_estimate(hadamard_channel, clamped, -1.0,
                          pauli_matrix(word("X")), named_state(1, "plus"),
                          100000, 11);
  const double bias_sigmas =
      std::abs(biased.estimate - 1.0) / biased.standard_error;
  require(bias_sigmas > 5.0,
          "clamped-model bias only " + fmt(bias_sigmas) + " standard errors");
  return "oracle deviation " + fmt(worst) + "; mitigation within " +
         fmt(std::abs(good.estimate - 1.0) / good.standard_error) +
         " sigma; clamped bias " + fmt(bias_sigmas) + " sigma";
}

std::string criterion_10_fit_mischaracterization() {
  Eigen::VectorXd truth_lambda(3);
  truth_lambda << 0.5, -0.21689041524151359, 0.5;
  const PLParams truth = PLParams::from_real(
      1, {word("X"), word("Y"), word("Z")}, truth_lambda);
  const PauliVector f = f_from_lambda(truth);
  std::vector<FMeasurement> data;
  for (Eigen::Index a = 1; a < 4; ++a)
    data.push_back({PauliWord::from_index(1, static_cast<std::uint64_t>(a)),
                    f[a], 0.0});
  const std::vector<PauliWord> support{word("X"), word("Y"), word("Z")};

  const FitResult free_fit = fit_sparse_lambda(data, support, true);
  require(free_fit.residual < 1e-10,
          "unconstrained residual " + fmt(free_fit.residual));
  const double recovered = free_fit.params.lambda_of(word("Y")).real();
  require(std::abs(recovered - truth_lambda[1]) < 1e-9,
          "recovered lambda_y = " + fmt(recovered));

  const FitResult clamped_fit = fit_sparse_lambda(data, support, false);
  require(clamped_fit.residual > 1e-4,
          "constrained residual " + fmt(clamped_fit.residual) + " <= 1e-4");
  return "unconstrained residual " + fmt(free_fit.residual) +
         ", constrained residual " + fmt(clamped_fit.residual);
}

struct Criterion {
  int id;
  std::string name;
  std::function<std::string()> run;
  double time_limit_s;  // 0 = untimed
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "Hadamard dephasing closed form", criterion_1_hadamard_closed_form,
       1.0},
      {2, "Hadamard dephasing + relaxation closed form",
       criterion_2_relaxation_closed_form, 0.0},
      {3, "sqrt(X) lambda_y,z exactness", criterion_3_sqrtx_exact_yz, 10.0},
      {4, "sqrt(X) second-order consistency (third-order scaling)",
       criterion_4_third_order_scaling, 0.0},
      {5, "lambda_x = 0 boundary vs second-order root",
       criterion_5_boundary_agreement, 0.0},
      {6, "phase-diagram regions", criterion_6_phase_diagram, 300.0},
      {7, "bijections and both Markovianity testers",
       criterion_7_bijection_and_prop2, 0.0},
      {8, "twirl equals the conjugation average", criterion_8_twirl_oracle,
       0.0},
      {9, "sampling oracle and mitigation bias", criterion_9_qem_oracle, 0.0},
      {10, "fit recovers negative parameters; clamping leaves residual",
       criterion_10_fit_mischaracterization, 0.0},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try {
      detail = c.run();
    } catch (const Failure& f) {
      ok = false;
      detail = f.message;
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("exception: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (ok && c.time_limit_s > 0.0 && elapsed > c.time_limit_s) {
      ok = false;
      detail = "took " + fmt(elapsed) + " s, limit " + fmt(c.time_limit_s) +
               " s";
    }
    failures += !ok;
    std::printf("[%s] criterion %2d: %s (%s; %.2f s)\n", ok ? "PASS" : "FAIL",
                c.id, c.name.c_str(), detail.c_str(), elapsed);
  }
  if (failures > 0)
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  else
    std::printf("all %zu criteria passed\n", criteria.size());
  return failures;
}
