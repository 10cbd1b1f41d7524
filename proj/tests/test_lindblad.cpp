#include "plq/lindblad.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "plq/errors.hpp"
#include "plq/scenarios.hpp"
#include "support.hpp"

using namespace plq;
using std::numbers::pi;

namespace {

Eigen::MatrixXcd mat(const char* label) {
  return pauli_matrix(PauliWord::from_label(label));
}

// Dephasing along Z at unit rate: Gamma = e_zz over (X, Z, Y).
LindbladGenerator z_dephasing(double rate) {
  Eigen::MatrixXcd gamma = Eigen::MatrixXcd::Zero(3, 3);
  gamma(1, 1) = rate;  // canonical non-identity order (X, Z, Y)
  return LindbladGenerator(1, Eigen::MatrixXcd::Zero(2, 2), gamma);
}

LindbladGenerator random_psd_generator(int n, std::mt19937_64& rng) {
  const Eigen::Index d = Eigen::Index{1} << n;
  const Eigen::Index count = (Eigen::Index{1} << (2 * n)) - 1;
  std::normal_distribution<double> gauss(0.0, 0.3);
  Eigen::MatrixXcd a(count, count);
  for (Eigen::Index i = 0; i < count; ++i)
    for (Eigen::Index j = 0; j < count; ++j)
      a(i, j) = std::complex<double>(gauss(rng), gauss(rng));
  Eigen::MatrixXcd gamma = a * a.adjoint();
  Eigen::MatrixXcd h(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      h(i, j) = std::complex<double>(gauss(rng), gauss(rng));
  h = (h + h.adjoint()).eval() / 2.0;
  return LindbladGenerator(n, h, gamma);
}

}  // namespace

TEST_CASE("generator transfer of basic generators") {
  const Eigen::MatrixXd deph = generator_transfer(z_dephasing(0.7));
  Eigen::Vector4d expected;
  expected << 0.0, -1.4, 0.0, -1.4;  // order (I, X, Z, Y)
  CHECK((deph - Eigen::MatrixXd(expected.asDiagonal())).cwiseAbs().maxCoeff() <
        1e-13);

  const double drive = 0.9;
  const LindbladGenerator rot(1, drive * mat("X") / 2.0,
                              Eigen::MatrixXcd::Zero(3, 3));
  Eigen::MatrixXd t = generator_transfer(rot);
  CHECK(t(2, 3) == doctest::Approx(drive).epsilon(1e-12));
  CHECK(t(3, 2) == doctest::Approx(-drive).epsilon(1e-12));
  t(2, 3) = t(3, 2) = 0.0;
  CHECK(t.cwiseAbs().maxCoeff() < 1e-13);

  const LindbladGenerator zero(1, Eigen::MatrixXcd::Zero(2, 2),
                               Eigen::MatrixXcd::Zero(3, 3));
  CHECK(generator_transfer(zero).cwiseAbs().maxCoeff() == 0.0);

  std::mt19937_64 rng(3);
  CHECK(generator_transfer(random_psd_generator(1, rng))
            .row(0)
            .cwiseAbs()
            .maxCoeff() < 1e-13);
}

TEST_CASE("generator construction validates Hermiticity") {
  Eigen::MatrixXcd h(2, 2);
  h << 0, 1, 0, 0;
  CHECK_THROWS_AS(LindbladGenerator(1, h, Eigen::MatrixXcd::Zero(3, 3)),
                  InvalidArgument);
  Eigen::MatrixXcd gamma = Eigen::MatrixXcd::Zero(3, 3);
  gamma(0, 1) = 1.0;
  CHECK_THROWS_AS(LindbladGenerator(1, Eigen::MatrixXcd::Zero(2, 2), gamma),
                  InvalidArgument);
}

TEST_CASE("constant propagation") {
  const Channel ch = propagate_constant(z_dephasing(1.0), 0.5);
  const PauliVector f = ch.pauli_eigenvalues();
  CHECK(f.at(PauliWord::from_label("X")) ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK(f.at(PauliWord::from_label("Y")) ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK(f.at(PauliWord::from_label("Z")) == doctest::Approx(1.0));

  CHECK(propagate_constant(z_dephasing(1.0), 0.0).transfer().isIdentity(1e-14));
  CHECK_THROWS_AS(propagate_constant(z_dephasing(1.0), -0.1), InvalidArgument);
}

TEST_CASE("Hadamard-jump dephasing reproduces the closed-form parameters") {
  const Channel ch =
      propagate_constant(hadamard_dephasing_generator(1.0), 1.0);
  const PLParams pl = lambda_from_f(twirl(ch).eigenvalues());
  CHECK(pl.lambda_of(PauliWord::from_label("X")).real() ==
        doctest::Approx(0.5).epsilon(1e-10));
  CHECK(pl.lambda_of(PauliWord::from_label("Z")).real() ==
        doctest::Approx(0.5).epsilon(1e-10));
  CHECK(pl.lambda_of(PauliWord::from_label("Y")).real() ==
        doctest::Approx(-0.21689041524151359).epsilon(1e-10));
}

TEST_CASE("semigroup law for constant generators") {
  std::mt19937_64 rng(5);
  const LindbladGenerator g = random_psd_generator(1, rng);
  const Channel lhs = propagate_constant(g, 0.8);
  const Channel rhs =
      compose(propagate_constant(g, 0.3), propagate_constant(g, 0.5));
  CHECK((lhs.transfer() - rhs.transfer()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("time-dependent propagation") {
  const LindbladGenerator g = z_dephasing(0.8);
  const GeneratorEvaluator constant = [&g](double) { return g; };
  const Channel stepped = propagate_timedep(constant, 1.3, 2000);
  const Channel exact = propagate_constant(g, 1.3);
  CHECK((stepped.transfer() - exact.transfer()).cwiseAbs().maxCoeff() < 1e-10);

  const LindbladGenerator zero(1, Eigen::MatrixXcd::Zero(2, 2),
                               Eigen::MatrixXcd::Zero(3, 3));
  const GeneratorEvaluator zero_eval = [&zero](double) { return zero; };
  for (int steps : {1, 7})
    CHECK(propagate_timedep(zero_eval, 2.0, steps).transfer().isIdentity(1e-14));

  CHECK_THROWS_AS(propagate_timedep(constant, 1.0, 0), InvalidArgument);
  CHECK_THROWS_AS(propagate_timedep({}, 1.0, 10), InvalidArgument);
}

TEST_CASE("gate-frame stepping converges at second order on the driven gate") {
  const RxGateSetup setup = rx_gate_setup(NoiseRates{0.3, 0.7}, pi / 2, 1.0);
  const Channel exact =
      error_channel(propagate_constant(setup.lab, 1.0), setup.gate);
  double prev_err = 0.0;
  for (int steps : {500, 1000, 2000}) {
    const Channel stepped = propagate_timedep(setup.gate_frame, 1.0, steps);
    const double err =
        (stepped.transfer() - exact.transfer()).cwiseAbs().maxCoeff();
    if (prev_err > 0.0) {
      const double order = std::log2(prev_err / err);
      CHECK(order > 1.9);
      CHECK(order < 2.5);
    }
    prev_err = err;
  }
}

TEST_CASE("lab-frame and gate-frame routes agree at steps=4000") {
  const RxGateSetup setup = rx_gate_setup(NoiseRates{0.3, 0.7}, pi / 2, 1.0);
  const Channel exact =
      error_channel(propagate_constant(setup.lab, 1.0), setup.gate);
  const Channel stepped = propagate_timedep(setup.gate_frame, 1.0, 4000);
  CHECK((stepped.transfer() - exact.transfer()).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("Kossakowski frame transform") {
  Eigen::MatrixXcd gamma = Eigen::MatrixXcd::Zero(3, 3);
  gamma(1, 1) = 0.6;  // Z axis

  CHECK((gate_frame_kossakowski(gamma, Eigen::MatrixXcd::Identity(2, 2)) -
         gamma).cwiseAbs().maxCoeff() < 1e-14);

  // Conjugating a Z jump with R_x(pi/2) moves its weight to the Y axis.
  const std::complex<double> i1(0.0, 1.0);
  Eigen::MatrixXcd rx(2, 2);
  const double c = std::cos(pi / 4), s = std::sin(pi / 4);
  rx << c, -i1 * s, -i1 * s, c;
  const Eigen::MatrixXcd moved = gate_frame_kossakowski(gamma, rx);
  CHECK(std::abs(moved(2, 2).real() - 0.6) < 1e-12);  // Y index in (X, Z, Y)
  Eigen::MatrixXcd rest = moved;
  rest(2, 2) = 0.0;
  CHECK(rest.cwiseAbs().maxCoeff() < 1e-12);

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const LindbladGenerator g = random_psd_generator(1, rng);
    const Eigen::MatrixXcd u = test::random_unitary(2, rng);
    const Eigen::MatrixXcd tilted = gate_frame_kossakowski(g.kossakowski, u);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> before(g.kossakowski);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> after(tilted);
    CHECK((before.eigenvalues() - after.eigenvalues()).cwiseAbs().maxCoeff() <
          1e-12);
  }
}

TEST_CASE("error channel extraction") {
  std::mt19937_64 rng(11);
  const Eigen::MatrixXcd u = test::random_unitary(2, rng);
  const GateContext ctx{1, [u](double t) {
                          return t == 0.0 ? Eigen::MatrixXcd::Identity(2, 2)
                                          : u;
                        },
                        1.0};

  CHECK(error_channel(Channel::from_unitary(u), ctx).transfer().isIdentity(
      1e-12));

  const Channel noise = random_cptp(1, 2, rng);
  const Channel noisy_gate = compose(Channel::from_unitary(u), noise);
  const Channel recovered = error_channel(noisy_gate, ctx);
  CHECK((recovered.transfer() - noise.transfer()).cwiseAbs().maxCoeff() <
        1e-12);
  CHECK(is_cptp(recovered).ok());
}

TEST_CASE("Hamiltonian/dissipator split round trips") {
  {
    const auto [h, gamma] =
        hamiltonian_dissipative_split(generator_transfer(z_dephasing(0.7)));
    CHECK(h.cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs(gamma(1, 1).real() - 0.7) < 1e-12);
    Eigen::MatrixXcd rest = gamma;
    rest(1, 1) = 0.0;
    CHECK(rest.cwiseAbs().maxCoeff() < 1e-12);
  }
  {
    const Eigen::MatrixXcd h0 = 0.8 * mat("X") / 2.0;
    const LindbladGenerator g(1, h0, Eigen::MatrixXcd::Zero(3, 3));
    const auto [h, gamma] =
        hamiltonian_dissipative_split(generator_transfer(g));
    CHECK(gamma.cwiseAbs().maxCoeff() < 1e-12);
    CHECK((h - h0).cwiseAbs().maxCoeff() < 1e-12);
  }
  std::mt19937_64 rng(13);
  for (int n = 1; n <= 2; ++n) {
    const LindbladGenerator g = random_psd_generator(n, rng);
    const Eigen::MatrixXd t = generator_transfer(g);
    const auto [h, gamma] = hamiltonian_dissipative_split(t);
    const Eigen::MatrixXd rebuilt =
        generator_transfer(LindbladGenerator(n, h, gamma));
    CHECK((rebuilt - t).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((gamma - g.kossakowski).cwiseAbs().maxCoeff() < 1e-8);
    // The original H carries a trace part the split discards.
    const Eigen::MatrixXcd h0 =
        g.hamiltonian - (g.hamiltonian.trace() / static_cast<double>(1 << n)) *
                            Eigen::MatrixXcd::Identity(1 << n, 1 << n);
    CHECK((h - h0).cwiseAbs().maxCoeff() < 1e-8);
  }
  CHECK_THROWS_AS(
      hamiltonian_dissipative_split(Eigen::MatrixXd::Identity(4, 4)),
      InvalidArgument);
}

TEST_CASE("general Markovianity test") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const CsmVerdict v =
        csm_test_general(propagate_constant(random_psd_generator(1, rng), 1.0));
    CHECK(v.is_csm);
  }
  for (int trial = 0; trial < 5; ++trial) {
    const CsmVerdict v =
        csm_test_general(propagate_constant(random_psd_generator(2, rng), 0.7));
    CHECK(v.is_csm);
  }
}

TEST_CASE("general test agrees with the Pauli test") {
  // The twirled Hadamard-dephasing channel is non-CSM by both routes.
  const Channel twirled =
      twirl(propagate_constant(hadamard_dephasing_generator(1.0), 1.0))
          .channel();
  const CsmVerdict general = csm_test_general(twirled);
  const CsmVerdict pauli = classify_pauli(twirled.pauli_eigenvalues());
  CHECK_FALSE(general.is_csm);
  CHECK_FALSE(pauli.is_csm);
  CHECK(general.min_value < -0.05);

  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 200; ++trial) {
    const PauliVector f = test::random_positive_f(1, rng);
    const Channel ch = PauliChannel(f).channel();
    CHECK(csm_test_general(ch).is_csm == classify_pauli(f).is_csm);
  }
}

TEST_CASE("near-identity unitary channels are CSM with a vanishing "
          "dissipator") {
  const std::complex<double> i1(0.0, 1.0);
  Eigen::MatrixXcd u(2, 2);
  const double c = std::cos(0.05), s = std::sin(0.05);
  u << c, -i1 * s, -i1 * s, c;
  const CsmVerdict v = csm_test_general(Channel::from_unitary(u));
  CHECK(v.is_csm);
  CHECK(v.kossakowski_spectrum.cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("principal-branch failures are inconclusive, never a verdict") {
  Eigen::Vector4d negative;
  negative << 1.0, -0.5, 0.25, -0.5;
  CHECK_THROWS_AS(
      csm_test_general(Channel::from_transfer(negative.asDiagonal())),
      InconclusiveError);

  Eigen::Vector4d singular;
  singular << 1.0, 0.0, 0.5, 0.5;
  CHECK_THROWS_AS(
      csm_test_general(Channel::from_transfer(singular.asDiagonal())),
      InconclusiveError);

  Eigen::MatrixXd not_tp = Eigen::MatrixXd::Identity(4, 4);
  not_tp(0, 1) = 0.2;
  CHECK_THROWS_AS(csm_test_general(Channel::from_transfer(not_tp)),
                  InvalidArgument);
}

TEST_CASE("jump-operator Kossakowski assembly") {
  Eigen::MatrixXcd sm(2, 2);
  sm << 0, 1, 0, 0;
  const Eigen::MatrixXcd gamma =
      kossakowski_from_jumps(1, {{0.4, sm}, {0.9, mat("Z")}});
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gamma);
  Eigen::Vector3d expected;
  expected << 0.0, 0.2, 0.9;  // {gamma/2, 0, gamma_phi} sorted
  CHECK((es.eigenvalues() - expected).cwiseAbs().maxCoeff() < 1e-12);

  CHECK_THROWS_AS(kossakowski_from_jumps(1, {{0.5, mat("I")}}),
                  InvalidArgument);
  CHECK_THROWS_AS(kossakowski_from_jumps(1, {{-0.5, mat("Z")}}),
                  InvalidArgument);
}
