#ifndef PLQ_SUPEROP_HPP
#define PLQ_SUPEROP_HPP

#include <vector>

#include <Eigen/Dense>

namespace plq::superop {

// Representation plumbing shared by the channel and generator machinery.
// Superoperators act on column-stacked density matrices:
// vec(A rho B) = (B^T (x) A) vec(rho).

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

Eigen::VectorXcd vec_col(const Eigen::MatrixXcd& r);
Eigen::MatrixXcd unvec_col(const Eigen::VectorXcd& v, Eigen::Index d);
Eigen::VectorXcd vec_row(const Eigen::MatrixXcd& r);
Eigen::MatrixXcd unvec_row(const Eigen::VectorXcd& v, Eigen::Index d);

// Cached dense Pauli basis for n qubits, in canonical order, plus its
// vectorized forms (columns vec_col(P_a) and vec_row(P_a)).
struct PauliBasis {
  std::vector<Eigen::MatrixXcd> matrices;
  Eigen::MatrixXcd vp_col;
  Eigen::MatrixXcd vr_row;
};
const PauliBasis& pauli_basis(int num_qubits);

Eigen::MatrixXcd from_kraus(const std::vector<Eigen::MatrixXcd>& kraus);

// Choi reshuffle J[k*d+i, l*d+j] = S[k + l*d, i + j*d] and its inverse.
Eigen::MatrixXcd choi_from_superop(const Eigen::MatrixXcd& s, Eigen::Index d);
Eigen::MatrixXcd superop_from_choi(const Eigen::MatrixXcd& j, Eigen::Index d);

// T_ab = 2^-n tr[P_a S(P_b)]; throws when the imaginary residue exceeds
// 1e-12 (not Hermiticity-preserving).
Eigen::MatrixXd transfer_from_superop(const Eigen::MatrixXcd& s,
                                      int num_qubits);
Eigen::MatrixXcd superop_from_transfer(const Eigen::MatrixXd& t,
                                       int num_qubits);

}  // namespace plq::superop

#endif
