#include "support.hpp"

namespace plq::test {

Eigen::MatrixXcd random_density(Eigen::Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd g(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j)
      g(i, j) = std::complex<double>(gauss(rng), gauss(rng));
  Eigen::MatrixXcd rho = g * g.adjoint();
  return rho / rho.trace();
}

Eigen::MatrixXcd random_unitary(Eigen::Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd g(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j)
      g(i, j) = std::complex<double>(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  return qr.householderQ() * Eigen::MatrixXcd::Identity(dim, dim);
}

Eigen::MatrixXd brute_force_twirl_transfer(const Channel& ch) {
  const int n = ch.num_qubits();
  const Eigen::Index count = Eigen::Index{1} << (2 * n);
  const Eigen::MatrixXd& t = ch.transfer();
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(count, count);
  for (Eigen::Index a = 0; a < count; ++a) {
    const PauliWord wa = PauliWord::from_index(n, static_cast<std::uint64_t>(a));
    Eigen::VectorXd signs(count);
    for (Eigen::Index b = 0; b < count; ++b) {
      const PauliWord wb = PauliWord::from_index(n, static_cast<std::uint64_t>(b));
      signs[b] = symplectic_product(wa, wb) ? -1.0 : 1.0;
    }
    acc += signs.asDiagonal() * t * signs.asDiagonal();
  }
  return acc / static_cast<double>(count);
}

PauliVector random_probability_vector(int num_qubits, std::mt19937_64& rng) {
  std::exponential_distribution<double> expo(1.0);
  PauliVector p(num_qubits);
  for (Eigen::Index i = 0; i < p.size(); ++i) p[i] = expo(rng);
  p.values() /= p.sum();
  return p;
}

PauliVector random_positive_f(int num_qubits, std::mt19937_64& rng) {
  for (;;) {
    const PauliVector p = random_probability_vector(num_qubits, rng);
    PauliVector f = walsh_hadamard_p_to_f(p);
    if (f.values().minCoeff() > 1e-3) return f;
  }
}

}  // namespace plq::test
