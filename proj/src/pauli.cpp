#include "plq/pauli.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "plq/errors.hpp"

namespace plq {

namespace {

void check_word_size(int n) {
  if (n < 1) throw InvalidArgument("qubit count must be positive");
  if (n > kMaxWordQubits)
    throw SizeLimitError("qubit count " + std::to_string(n) +
                         " exceeds the bit-packed word limit of " +
                         std::to_string(kMaxWordQubits));
}

std::uint64_t low_mask(int n) {
  return n == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
}

}  // namespace

PauliWord::PauliWord(int num_qubits) : n_(num_qubits), x_(0), z_(0) {
  check_word_size(num_qubits);
}

PauliWord PauliWord::from_label(std::string_view label) {
  if (label.empty()) throw ParseError("empty Pauli label", "label");
  check_word_size(static_cast<int>(label.size()));
  std::uint64_t x = 0, z = 0;
  for (std::size_t i = 0; i < label.size(); ++i) {
    switch (label[i]) {
      case 'I':
        break;
      case 'X':
        x |= std::uint64_t{1} << i;
        break;
      case 'Y':
        x |= std::uint64_t{1} << i;
        z |= std::uint64_t{1} << i;
        break;
      case 'Z':
        z |= std::uint64_t{1} << i;
        break;
      default:
        throw ParseError("invalid Pauli character '" +
                             std::string(1, label[i]) + "' at position " +
                             std::to_string(i),
                         "label");
    }
  }
  return PauliWord(static_cast<int>(label.size()), x, z);
}

PauliWord PauliWord::from_bits(int num_qubits, std::uint64_t x_bits,
                               std::uint64_t z_bits) {
  check_word_size(num_qubits);
  const std::uint64_t mask = low_mask(num_qubits);
  if ((x_bits & ~mask) != 0 || (z_bits & ~mask) != 0)
    throw InvalidArgument("bit vector exceeds the qubit count");
  return PauliWord(num_qubits, x_bits, z_bits);
}

PauliWord PauliWord::from_index(int num_qubits, std::uint64_t index) {
  check_word_size(num_qubits);
  const std::uint64_t mask = low_mask(num_qubits);
  if (index >> (2 * num_qubits) != 0)
    throw InvalidArgument("canonical index out of range");
  return PauliWord(num_qubits, index & mask, (index >> num_qubits) & mask);
}

std::string PauliWord::label() const {
  static constexpr char kChars[4] = {'I', 'X', 'Z', 'Y'};
  std::string out(static_cast<std::size_t>(n_), 'I');
  for (int q = 0; q < n_; ++q) {
    const int code = static_cast<int>((x_ >> q) & 1) |
                     (static_cast<int>((z_ >> q) & 1) << 1);
    out[static_cast<std::size_t>(q)] = kChars[code];
  }
  return out;
}

int symplectic_product(const PauliWord& a, const PauliWord& b) {
  if (a.num_qubits() != b.num_qubits())
    throw InvalidArgument("symplectic product of words with different sizes");
  const int cross = std::popcount(a.x_bits() & b.z_bits()) +
                    std::popcount(a.z_bits() & b.x_bits());
  return cross & 1;
}

std::pair<std::complex<double>, PauliWord> multiply(const PauliWord& a,
                                                    const PauliWord& b) {
  if (a.num_qubits() != b.num_qubits())
    throw InvalidArgument("product of words with different sizes");
  const std::uint64_t xc = a.x_bits() ^ b.x_bits();
  const std::uint64_t zc = a.z_bits() ^ b.z_bits();
  // Per qubit, with Y = iXZ:
  //   (i^{xa za} X^xa Z^za)(i^{xb zb} X^xb Z^zb)
  //     = i^{xa za + xb zb - xc zc} (-1)^{za xb} i^{xc zc} X^xc Z^zc.
  int exponent = std::popcount(a.x_bits() & a.z_bits()) +
                 std::popcount(b.x_bits() & b.z_bits()) -
                 std::popcount(xc & zc) +
                 2 * std::popcount(a.z_bits() & b.x_bits());
  exponent &= 3;
  static constexpr std::complex<double> kPhases[4] = {
      {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
  return {kPhases[exponent],
          PauliWord::from_bits(a.num_qubits(), xc, zc)};
}

Eigen::MatrixXcd pauli_matrix(const PauliWord& word) {
  const int n = word.num_qubits();
  if (n > kMaxDenseQubits)
    throw SizeLimitError("dense Pauli matrix limited to " +
                         std::to_string(kMaxDenseQubits) + " qubits, got " +
                         std::to_string(n));
  using Mat2 = Eigen::Matrix2cd;
  const std::complex<double> i1(0.0, 1.0);
  Mat2 singles[4];
  singles[0] << 1, 0, 0, 1;                   // I
  singles[1] << 0, 1, 1, 0;                   // X
  singles[2] << 1, 0, 0, -1;                  // Z
  singles[3] << 0, -i1, i1, 0;                // Y = iXZ
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Ones(1, 1);
  for (int q = 0; q < n; ++q) {
    const int code = static_cast<int>((word.x_bits() >> q) & 1) |
                     (static_cast<int>((word.z_bits() >> q) & 1) << 1);
    const Mat2& s = singles[code];
    Eigen::MatrixXcd next(acc.rows() * 2, acc.cols() * 2);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c)
        next.block(r * acc.rows(), c * acc.cols(), acc.rows(), acc.cols()) =
            s(r, c) * acc;
    acc = std::move(next);
  }
  return acc;
}

PauliVector::PauliVector(int num_qubits) : n_(num_qubits) {
  check_word_size(num_qubits);
  if (num_qubits > 15)
    throw SizeLimitError("PauliVector limited to 15 qubits");
  values_ = Eigen::VectorXd::Zero(Eigen::Index{1} << (2 * num_qubits));
}

PauliVector::PauliVector(int num_qubits, Eigen::VectorXd values)
    : PauliVector(num_qubits) {
  if (values.size() != values_.size())
    throw InvalidArgument("PauliVector for " + std::to_string(num_qubits) +
                          " qubits needs length " +
                          std::to_string(values_.size()) + ", got " +
                          std::to_string(values.size()));
  values_ = std::move(values);
}

double PauliVector::at(const PauliWord& word) const {
  if (word.num_qubits() != n_)
    throw InvalidArgument("word size does not match vector");
  return values_[static_cast<Eigen::Index>(word.index())];
}

double& PauliVector::at(const PauliWord& word) {
  if (word.num_qubits() != n_)
    throw InvalidArgument("word size does not match vector");
  return values_[static_cast<Eigen::Index>(word.index())];
}

namespace {

// In-place butterfly over the 2-bit digit (x_q, z_q) of each qubit. The
// single-qubit kernel over digit order (I, X, Z, Y) is
//   [1  1  1  1]
//   [1  1 -1 -1]
//   [1 -1  1 -1]
//   [1 -1 -1  1]
// which squares to 4 * identity, so the inverse transform is the same
// butterfly followed by a 4^-n rescale.
void butterfly(int n, Eigen::VectorXd& v) {
  const Eigen::Index size = v.size();
  for (int q = 0; q < n; ++q) {
    const Eigen::Index bx = Eigen::Index{1} << q;
    const Eigen::Index bz = Eigen::Index{1} << (n + q);
    for (Eigen::Index idx = 0; idx < size; ++idx) {
      if ((idx & bx) != 0 || (idx & bz) != 0) continue;
      const double vi = v[idx];
      const double vx = v[idx | bx];
      const double vz = v[idx | bz];
      const double vy = v[idx | bx | bz];
      v[idx] = vi + vx + vz + vy;
      v[idx | bx] = vi + vx - vz - vy;
      v[idx | bz] = vi - vx + vz - vy;
      v[idx | bx | bz] = vi - vx - vz + vy;
    }
  }
}

}  // namespace

PauliVector walsh_hadamard_p_to_f(const PauliVector& p) {
  PauliVector out = p;
  butterfly(p.num_qubits(), out.values());
  return out;
}

PauliVector walsh_hadamard_f_to_p(const PauliVector& f) {
  PauliVector out = f;
  butterfly(f.num_qubits(), out.values());
  out.values() *= std::pow(0.25, f.num_qubits());
  return out;
}

PauliVector walsh_hadamard_p_to_f_naive(const PauliVector& p) {
  const int n = p.num_qubits();
  PauliVector out(n);
  for (Eigen::Index a = 0; a < p.size(); ++a) {
    const PauliWord wa = PauliWord::from_index(n, static_cast<std::uint64_t>(a));
    double acc = 0.0;
    for (Eigen::Index k = 0; k < p.size(); ++k) {
      const PauliWord wk = PauliWord::from_index(n, static_cast<std::uint64_t>(k));
      acc += (symplectic_product(wa, wk) ? -1.0 : 1.0) * p[k];
    }
    out[a] = acc;
  }
  return out;
}

PauliVector walsh_hadamard_f_to_p_naive(const PauliVector& f) {
  PauliVector out = walsh_hadamard_p_to_f_naive(f);
  out.values() *= std::pow(0.25, f.num_qubits());
  return out;
}

}  // namespace plq
