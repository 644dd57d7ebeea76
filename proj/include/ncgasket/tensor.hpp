#pragma once

// Dense matrices over tensor powers of M_3(C).
// Tensor factors are ordered left to right, the leftmost factor is the most
// significant digit of the flattened row/column index.

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace ncgasket {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Index = Eigen::Index;

inline constexpr Index kDefaultDenseCap = 2187;  // 3^7
inline constexpr Index kExactNormDim = 729;
inline constexpr double kPowerIterationTol = 1e-12;
inline constexpr int kPowerIterationMaxIter = 10000;

constexpr Index pow3(int k) {
  Index r = 1;
  for (int i = 0; i < k; ++i) r *= 3;
  return r;
}

// Indices of the three-letter alphabet live in {1,2,3}; arithmetic is mod 3.
constexpr int wrap_index(int j) { return ((j - 1) % 3 + 3) % 3 + 1; }

inline void require_letter(int j, const char* what) {
  if (j < 1 || j > 3) throw DomainError(std::string(what) + " must be in {1,2,3}, got " + std::to_string(j));
}

class Word {
 public:
  Word() = default;
  explicit Word(std::vector<int> letters) : letters_(std::move(letters)) {
    for (int d : letters_) require_letter(d, "word letter");
  }

  static Word from_string(std::string_view s) {
    std::vector<int> letters;
    letters.reserve(s.size());
    for (char c : s) {
      if (c < '1' || c > '3') throw DomainError("word letter must be one of 1,2,3: '" + std::string(s) + "'");
      letters.push_back(c - '0');
    }
    return Word(std::move(letters));
  }

  static Word from_index(Index index, int length) {
    if (length < 0 || index < 0 || index >= pow3(length)) throw DomainError("word index out of range");
    std::vector<int> letters(static_cast<std::size_t>(length));
    for (int i = length - 1; i >= 0; --i) {
      letters[static_cast<std::size_t>(i)] = static_cast<int>(index % 3) + 1;
      index /= 3;
    }
    return Word(std::move(letters));
  }

  static Word repeated(int letter, int count) {
    return Word(std::vector<int>(static_cast<std::size_t>(std::max(count, 0)), letter));
  }

  int size() const noexcept { return static_cast<int>(letters_.size()); }
  bool empty() const noexcept { return letters_.empty(); }
  int operator[](int i) const { return letters_.at(static_cast<std::size_t>(i)); }
  const std::vector<int>& letters() const noexcept { return letters_; }

  Index index() const {
    Index r = 0;
    for (int d : letters_) r = 3 * r + (d - 1);
    return r;
  }

  Word prefix(int len) const {
    return Word(std::vector<int>(letters_.begin(), letters_.begin() + len));
  }

  Word operator+(const Word& other) const {
    Word w = *this;
    w.letters_.insert(w.letters_.end(), other.letters_.begin(), other.letters_.end());
    return w;
  }

  Word appended(int letter) const {
    require_letter(letter, "word letter");
    Word w = *this;
    w.letters_.push_back(letter);
    return w;
  }

  std::string str() const {
    std::string s;
    for (int d : letters_) s.push_back(static_cast<char>('0' + d));
    return s;
  }

  auto operator<=>(const Word&) const = default;

 private:
  std::vector<int> letters_;
};

inline ComplexMatrix matrix_unit(Index dim, Index i, Index j) {
  if (i < 1 || i > dim || j < 1 || j > dim) throw DomainError("matrix unit index out of range");
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  m(i - 1, j - 1) = 1.0;
  return m;
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b, Index cap = kDefaultDenseCap) {
  const Index rows = a.rows() * b.rows();
  const Index cols = a.cols() * b.cols();
  if (rows > cap || cols > cap) {
    throw DomainError("dense dimension " + std::to_string(std::max(rows, cols)) + " exceeds cap " +
                      std::to_string(cap));
  }
  ComplexMatrix out(rows, cols);
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline ComplexMatrix kron_power(const ComplexMatrix& a, int m, Index cap = kDefaultDenseCap) {
  if (m < 0) throw DomainError("negative tensor power");
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (int i = 0; i < m; ++i) out = kron(out, a, cap);
  return out;
}

inline ComplexMatrix identity_matrix(Index dim) { return ComplexMatrix::Identity(dim, dim); }

inline Complex trace(const ComplexMatrix& a) { return a.trace(); }

inline Complex normalized_trace(const ComplexMatrix& a) {
  if (a.rows() == 0) throw DomainError("trace of empty matrix");
  return a.trace() / static_cast<double>(a.rows());
}

inline double frobenius_norm_squared(const ComplexMatrix& a) { return a.squaredNorm(); }

namespace detail {

inline double power_iteration_norm(const ComplexMatrix& a) {
  std::mt19937_64 gen(0x9e3779b97f4a7c15ULL);
  std::normal_distribution<double> nd;
  ComplexVector v(a.cols());
  for (Index i = 0; i < v.size(); ++i) v(i) = Complex(nd(gen), nd(gen));
  v.normalize();
  double lambda = 0.0;
  double change = INFINITY;
  for (int it = 0; it < kPowerIterationMaxIter; ++it) {
    ComplexVector w = a.adjoint() * (a * v);
    const double next = std::abs(v.dot(w));
    const double wn = w.norm();
    if (wn == 0.0) return 0.0;
    v = w / wn;
    change = std::abs(next - lambda) / std::max(next, 1e-300);
    lambda = next;
    if (it > 0 && change <= kPowerIterationTol) return std::sqrt(lambda);
  }
  throw ConvergenceError("power iteration did not converge", change);
}

}  // namespace detail

// Largest singular value. Full decomposition up to dimension 729, power
// iteration on A*A above that.
inline double op_norm(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  if (std::max(a.rows(), a.cols()) <= kExactNormDim) {
    Eigen::BDCSVD<ComplexMatrix> svd(a);
    return svd.singularValues()(0);
  }
  return detail::power_iteration_norm(a);
}

inline bool is_last_factor_diagonal(const ComplexMatrix& a) {
  const Index n = a.rows();
  if (n < 3 || n % 3 != 0 || a.cols() != n) return false;
  for (Index c = 0; c < n; ++c)
    for (Index r = 0; r < n; ++r)
      if (r % 3 != c % 3 && a(r, c) != Complex(0.0)) return false;
  return true;
}

// Compression onto position q (1..3) of the last tensor factor.
inline ComplexMatrix last_factor_block(const ComplexMatrix& a, int q) {
  require_letter(q, "last factor position");
  const Index m = a.rows() / 3;
  ComplexMatrix out(m, m);
  for (Index c = 0; c < m; ++c)
    for (Index r = 0; r < m; ++r) out(r, c) = a(3 * r + q - 1, 3 * c + q - 1);
  return out;
}

// Places x at diagonal position q of a new last tensor factor (adds into out).
inline void add_at_last_factor(ComplexMatrix& out, const ComplexMatrix& x, int q) {
  for (Index c = 0; c < x.cols(); ++c)
    for (Index r = 0; r < x.rows(); ++r) out(3 * r + q - 1, 3 * c + q - 1) += x(r, c);
}

// Operator norm that splits off trailing tensor factors in which the matrix is
// diagonal, so only the irreducible blocks are decomposed.
inline double op_norm_structured(const ComplexMatrix& a) {
  if (is_last_factor_diagonal(a)) {
    double best = 0.0;
    for (int q = 1; q <= 3; ++q) best = std::max(best, op_norm_structured(last_factor_block(a, q)));
    return best;
  }
  return op_norm(a);
}

// Entry block (i, j) of the first tensor factor.
inline ComplexMatrix first_factor_block(const ComplexMatrix& a, int i, int j) {
  require_letter(i, "first factor row");
  require_letter(j, "first factor column");
  const Index s = a.rows() / 3;
  return a.block((i - 1) * s, (j - 1) * s, s, s);
}

// (id ⊗ ω)(A) for a functional ω(x) = Σ ω[p,q] x[p,q] on the last factor.
inline ComplexMatrix contract_last(const ComplexMatrix& a, const Eigen::Matrix3cd& omega) {
  const Index m = a.rows() / 3;
  ComplexMatrix out = ComplexMatrix::Zero(m, m);
  for (int p = 0; p < 3; ++p)
    for (int q = 0; q < 3; ++q) {
      if (omega(p, q) == Complex(0.0)) continue;
      for (Index c = 0; c < m; ++c)
        for (Index r = 0; r < m; ++r) out(r, c) += omega(p, q) * a(3 * r + p, 3 * c + q);
    }
  return out;
}

// ω_1 ⊗ ... ⊗ ω_k applied to a matrix on k tensor factors.
inline Complex apply_product_functional(const ComplexMatrix& a, const std::vector<Eigen::Matrix3cd>& factors) {
  if (a.rows() != pow3(static_cast<int>(factors.size())))
    throw DomainError("product functional has wrong number of factors");
  ComplexMatrix cur = a;
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) cur = contract_last(cur, *it);
  return cur(0, 0);
}

}  // namespace ncgasket
