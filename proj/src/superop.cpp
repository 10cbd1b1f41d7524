#include "plq/superop.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "plq/errors.hpp"
#include "plq/pauli.hpp"

namespace plq::superop {

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Eigen::VectorXcd vec_col(const Eigen::MatrixXcd& r) {
  return Eigen::Map<const Eigen::VectorXcd>(r.data(), r.size());
}

Eigen::MatrixXcd unvec_col(const Eigen::VectorXcd& v, Eigen::Index d) {
  return Eigen::Map<const Eigen::MatrixXcd>(v.data(), d, d);
}

Eigen::VectorXcd vec_row(const Eigen::MatrixXcd& r) {
  Eigen::MatrixXcd t = r.transpose();
  return Eigen::Map<const Eigen::VectorXcd>(t.data(), t.size());
}

Eigen::MatrixXcd unvec_row(const Eigen::VectorXcd& v, Eigen::Index d) {
  return Eigen::Map<const Eigen::Matrix<std::complex<double>, Eigen::Dynamic,
                                        Eigen::Dynamic, Eigen::RowMajor>>(
      v.data(), d, d);
}

const PauliBasis& pauli_basis(int num_qubits) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<PauliBasis>> cache;
  std::scoped_lock lock(mu);
  auto& slot = cache[num_qubits];
  if (!slot) {
    auto entry = std::make_unique<PauliBasis>();
    const Eigen::Index count = Eigen::Index{1} << (2 * num_qubits);
    const Eigen::Index d = Eigen::Index{1} << num_qubits;
    entry->matrices.reserve(static_cast<std::size_t>(count));
    entry->vp_col.resize(d * d, count);
    entry->vr_row.resize(d * d, count);
    for (Eigen::Index a = 0; a < count; ++a) {
      entry->matrices.push_back(pauli_matrix(
          PauliWord::from_index(num_qubits, static_cast<std::uint64_t>(a))));
      entry->vp_col.col(a) = vec_col(entry->matrices.back());
      entry->vr_row.col(a) = vec_row(entry->matrices.back());
    }
    slot = std::move(entry);
  }
  return *slot;
}

Eigen::MatrixXcd from_kraus(const std::vector<Eigen::MatrixXcd>& kraus) {
  const Eigen::Index d = kraus.front().rows();
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(d * d, d * d);
  for (const auto& k : kraus) s += kron(k.conjugate(), k);
  return s;
}

Eigen::MatrixXcd choi_from_superop(const Eigen::MatrixXcd& s, Eigen::Index d) {
  Eigen::MatrixXcd j(d * d, d * d);
  for (Eigen::Index k = 0; k < d; ++k)
    for (Eigen::Index l = 0; l < d; ++l)
      for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index jj = 0; jj < d; ++jj)
          j(k * d + i, l * d + jj) = s(k + l * d, i + jj * d);
  return j;
}

Eigen::MatrixXcd superop_from_choi(const Eigen::MatrixXcd& j, Eigen::Index d) {
  Eigen::MatrixXcd s(d * d, d * d);
  for (Eigen::Index k = 0; k < d; ++k)
    for (Eigen::Index l = 0; l < d; ++l)
      for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index jj = 0; jj < d; ++jj)
          s(k + l * d, i + jj * d) = j(k * d + i, l * d + jj);
  return s;
}

Eigen::MatrixXd transfer_from_superop(const Eigen::MatrixXcd& s,
                                      int num_qubits) {
  const PauliBasis& basis = pauli_basis(num_qubits);
  const double d = std::pow(2.0, num_qubits);
  Eigen::MatrixXcd t = basis.vp_col.adjoint() * s * basis.vp_col / d;
  const double scale = std::max(1.0, t.cwiseAbs().maxCoeff());
  const double residue = t.imag().cwiseAbs().maxCoeff();
  if (residue > 1e-12 * scale)
    throw InvalidArgument(
        "map is not Hermiticity-preserving: transfer matrix has imaginary "
        "residue " +
        std::to_string(residue));
  return t.real();
}

Eigen::MatrixXcd superop_from_transfer(const Eigen::MatrixXd& t,
                                       int num_qubits) {
  const PauliBasis& basis = pauli_basis(num_qubits);
  const double d = std::pow(2.0, num_qubits);
  return basis.vp_col * t.cast<std::complex<double>>() *
         basis.vp_col.adjoint() / d;
}

}  // namespace plq::superop
