#ifndef PLQ_TESTS_SUPPORT_HPP
#define PLQ_TESTS_SUPPORT_HPP

#include <random>

#include <Eigen/Dense>

#include "plq/channel.hpp"
#include "plq/pauli.hpp"

namespace plq::test {

// Random density matrix: normalized G G^dagger for Gaussian G.
Eigen::MatrixXcd random_density(Eigen::Index dim, std::mt19937_64& rng);

// Haar-distributed unitary from the QR of a Gaussian matrix.
Eigen::MatrixXcd random_unitary(Eigen::Index dim, std::mt19937_64& rng);

// Oracle for the twirl: the explicit 4^n-term average over P_a o E o P_a.
Eigen::MatrixXd brute_force_twirl_transfer(const Channel& ch);

// Random point on the probability simplex over 4^n words.
PauliVector random_probability_vector(int num_qubits, std::mt19937_64& rng);

// Random Pauli-channel eigenvalues with every entry positive
// (rejection-sampled from random probability vectors).
PauliVector random_positive_f(int num_qubits, std::mt19937_64& rng);

}  // namespace plq::test

#endif
