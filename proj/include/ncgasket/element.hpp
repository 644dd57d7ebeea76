#pragma once

// Elements of the approximating algebras A_n ⊂ M_3^{⊗(n+1)} in block form.
//
//   b = Σ_j ξ_j α^n_j + Σ_{k=0}^{n-1} Σ_j η_{k,j} ⊗ β^{n-k}_j
//
// with α^n_j = e_jj ⊗ e22^{⊗n} and
// β^g_j = (e_jj ⊗ e11 + e_{j+2,j+2} ⊗ e33) ⊗ e22^{⊗(g-1)}.
// The block η_{k,j} lives in M_3^{⊗k} and sits in the leftmost k factors.
// All supports are mutually orthogonal, so the algebra is a direct sum of
// 3 copies of C and 3 copies of each M_3^{⊗k}, k < n.

#include <array>
#include <vector>

#include "tensor.hpp"

namespace ncgasket {

class GasketElement {
 public:
  GasketElement() : GasketElement(0) {}

  explicit GasketElement(int level) : level_(level) {
    if (level < 0) throw DomainError("level must be nonnegative");
    xi_.fill(Complex(0.0));
    blocks_.resize(static_cast<std::size_t>(level));
    for (int k = 0; k < level; ++k)
      for (auto& m : blocks_[static_cast<std::size_t>(k)]) m = ComplexMatrix::Zero(pow3(k), pow3(k));
  }

  int level() const noexcept { return level_; }

  Complex xi(int j) const {
    require_letter(j, "character index");
    return xi_[static_cast<std::size_t>(j - 1)];
  }

  void set_xi(int j, Complex v) {
    require_letter(j, "character index");
    xi_[static_cast<std::size_t>(j - 1)] = v;
  }

  const ComplexMatrix& block(int k, int j) const { return blocks_[check_block(k, j)][static_cast<std::size_t>(j - 1)]; }

  void set_block(int k, int j, const ComplexMatrix& m) {
    const auto kk = check_block(k, j);
    if (m.rows() != pow3(k) || m.cols() != pow3(k))
      throw DomainError("block (k=" + std::to_string(k) + ") must be " + std::to_string(pow3(k)) + "x" +
                        std::to_string(pow3(k)));
    blocks_[kk][static_cast<std::size_t>(j - 1)] = m;
  }

  void add_to_block(int k, int j, const ComplexMatrix& m) {
    const auto kk = check_block(k, j);
    blocks_[kk][static_cast<std::size_t>(j - 1)] += m;
  }

  friend GasketElement operator+(const GasketElement& a, const GasketElement& b) {
    a.require_same_level(b);
    GasketElement r = a;
    for (std::size_t j = 0; j < 3; ++j) r.xi_[j] += b.xi_[j];
    for (std::size_t k = 0; k < r.blocks_.size(); ++k)
      for (std::size_t j = 0; j < 3; ++j) r.blocks_[k][j] += b.blocks_[k][j];
    return r;
  }

  friend GasketElement operator-(const GasketElement& a, const GasketElement& b) {
    a.require_same_level(b);
    GasketElement r = a;
    for (std::size_t j = 0; j < 3; ++j) r.xi_[j] -= b.xi_[j];
    for (std::size_t k = 0; k < r.blocks_.size(); ++k)
      for (std::size_t j = 0; j < 3; ++j) r.blocks_[k][j] -= b.blocks_[k][j];
    return r;
  }

  friend GasketElement operator*(const GasketElement& a, const GasketElement& b) {
    a.require_same_level(b);
    GasketElement r(a.level_);
    for (std::size_t j = 0; j < 3; ++j) r.xi_[j] = a.xi_[j] * b.xi_[j];
    for (std::size_t k = 0; k < r.blocks_.size(); ++k)
      for (std::size_t j = 0; j < 3; ++j) r.blocks_[k][j].noalias() = a.blocks_[k][j] * b.blocks_[k][j];
    return r;
  }

  friend GasketElement operator*(Complex c, const GasketElement& a) {
    GasketElement r = a;
    for (auto& x : r.xi_) x *= c;
    for (auto& fam : r.blocks_)
      for (auto& m : fam) m *= c;
    return r;
  }

  friend GasketElement operator*(const GasketElement& a, Complex c) { return c * a; }

  GasketElement adjoint() const {
    GasketElement r = *this;
    for (auto& x : r.xi_) x = std::conj(x);
    for (auto& fam : r.blocks_)
      for (auto& m : fam) m.adjointInPlace();
    return r;
  }

  // Largest absolute difference over all components.
  friend double max_abs_diff(const GasketElement& a, const GasketElement& b) {
    a.require_same_level(b);
    double d = 0.0;
    for (std::size_t j = 0; j < 3; ++j) d = std::max(d, std::abs(a.xi_[j] - b.xi_[j]));
    for (std::size_t k = 0; k < a.blocks_.size(); ++k)
      for (std::size_t j = 0; j < 3; ++j)
        if (a.blocks_[k][j].size() > 0) d = std::max(d, (a.blocks_[k][j] - b.blocks_[k][j]).cwiseAbs().maxCoeff());
    return d;
  }

  void require_same_level(const GasketElement& other) const {
    if (level_ != other.level_)
      throw DomainError("level mismatch: " + std::to_string(level_) + " vs " + std::to_string(other.level_));
  }

 private:
  std::size_t check_block(int k, int j) const {
    if (k < 0 || k >= level_)
      throw DomainError("block index k=" + std::to_string(k) + " out of range for level " + std::to_string(level_));
    require_letter(j, "block index j");
    return static_cast<std::size_t>(k);
  }

  int level_;
  std::array<Complex, 3> xi_;
  std::vector<std::array<ComplexMatrix, 3>> blocks_;
};

inline GasketElement zero_element(int n) { return GasketElement(n); }

inline GasketElement identity_element(int n) {
  GasketElement e(n);
  for (int j = 1; j <= 3; ++j) {
    e.set_xi(j, 1.0);
    for (int k = 0; k < n; ++k) e.set_block(k, j, identity_matrix(pow3(k)));
  }
  return e;
}

inline GasketElement alpha(int n, int j) {
  require_letter(j, "alpha index");
  GasketElement e(n);
  e.set_xi(j, 1.0);
  return e;
}

// x ⊗ β^{g}_j at level n, i.e. the block η_{n-g, j} = x.
inline GasketElement beta_block(int n, int g, int j, const ComplexMatrix& x) {
  if (g < 1 || g > n) throw DomainError("generation must be in 1..n");
  GasketElement e(n);
  e.set_block(n - g, j, x);
  return e;
}

inline Complex character_xi(const GasketElement& e, int j) { return e.xi(j); }

inline const ComplexMatrix& rep_eta(const GasketElement& e, int k, int j) { return e.block(k, j); }

// id ⊗ e22* : A_n → A_{n-1}. The youngest block family disappears.
inline GasketElement restrict(const GasketElement& e) {
  if (e.level() < 1) throw DomainError("cannot restrict a level-0 element");
  GasketElement r(e.level() - 1);
  for (int j = 1; j <= 3; ++j) {
    r.set_xi(j, e.xi(j));
    for (int k = 0; k < e.level() - 1; ++k) r.set_block(k, j, e.block(k, j));
  }
  return r;
}

inline GasketElement restrict_to(const GasketElement& e, int m) {
  if (m < 0 || m > e.level())
    throw DomainError("restriction target " + std::to_string(m) + " outside 0.." + std::to_string(e.level()));
  GasketElement r(m);
  for (int j = 1; j <= 3; ++j) {
    r.set_xi(j, e.xi(j));
    for (int k = 0; k < m; ++k) r.set_block(k, j, e.block(k, j));
  }
  return r;
}

// b ↦ b ⊗ e22 : A_n → A_{n+1}; the new block family is zero.
inline GasketElement coembed(const GasketElement& e) {
  GasketElement r(e.level() + 1);
  for (int j = 1; j <= 3; ++j) {
    r.set_xi(j, e.xi(j));
    for (int k = 0; k < e.level(); ++k) r.set_block(k, j, e.block(k, j));
  }
  return r;
}

inline double norm(const GasketElement& e) {
  double best = 0.0;
  for (int j = 1; j <= 3; ++j) {
    best = std::max(best, std::abs(e.xi(j)));
    for (int k = 0; k < e.level(); ++k) best = std::max(best, op_norm(e.block(k, j)));
  }
  return best;
}

// Unnormalized matrix trace of the dense realization. Each block appears in
// two orthogonal positions of the ambient tensor product.
inline Complex trace(const GasketElement& e) {
  Complex t = 0.0;
  for (int j = 1; j <= 3; ++j) {
    t += e.xi(j);
    for (int k = 0; k < e.level(); ++k) t += 2.0 * e.block(k, j).trace();
  }
  return t;
}

// Trace-preserving conditional expectation onto the diagonal subalgebra.
inline GasketElement cond_expectation(const GasketElement& e) {
  GasketElement r(e.level());
  for (int j = 1; j <= 3; ++j) {
    r.set_xi(j, e.xi(j));
    for (int k = 0; k < e.level(); ++k) {
      ComplexMatrix d = ComplexMatrix::Zero(pow3(k), pow3(k));
      d.diagonal() = e.block(k, j).diagonal();
      r.set_block(k, j, d);
    }
  }
  return r;
}

inline bool is_classical(const GasketElement& e) {
  for (int j = 1; j <= 3; ++j)
    for (int k = 0; k < e.level(); ++k) {
      const auto& m = e.block(k, j);
      for (Index c = 0; c < m.cols(); ++c)
        for (Index r = 0; r < m.rows(); ++r)
          if (r != c && m(r, c) != Complex(0.0)) return false;
    }
  return true;
}

inline bool is_hermitian(const GasketElement& e, double tol = 0.0) {
  return max_abs_diff(e, e.adjoint()) <= tol;
}

}  // namespace ncgasket
