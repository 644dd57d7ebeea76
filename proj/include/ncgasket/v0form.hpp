#pragma once

// Every element of A_n is block diagonal in the last tensor factor. Its three
// diagonal compressions a(v_1), a(v_2), a(v_3) ∈ M_3^{⊗n} form the V0 form:
//
//   a(v_2) = dense(ρ(a)),
//   a(v_1) = Σ_q η_{n-1,q}   ⊗ e_qq,
//   a(v_3) = Σ_q η_{n-1,q+1} ⊗ e_qq.
//
// At level 0 the three values are the scalars ξ_j.

#include <array>
#include <cmath>

#include "element.hpp"

namespace ncgasket {

struct V0Form {
  int level = 0;
  std::array<ComplexMatrix, 3> values;

  const ComplexMatrix& at(int q) const {
    require_letter(q, "boundary vertex");
    return values[static_cast<std::size_t>(q - 1)];
  }
};

ComplexMatrix to_dense(const GasketElement& e, Index cap = kDefaultDenseCap);

inline V0Form to_v0form(const GasketElement& e, Index cap = kDefaultDenseCap) {
  const int n = e.level();
  V0Form f;
  f.level = n;
  if (n == 0) {
    for (int q = 1; q <= 3; ++q) f.values[static_cast<std::size_t>(q - 1)] = ComplexMatrix::Constant(1, 1, e.xi(q));
    return f;
  }
  const Index s = pow3(n);
  if (s > cap) throw DomainError("dense dimension " + std::to_string(s) + " exceeds cap " + std::to_string(cap));
  f.values[1] = to_dense(restrict(e), cap);
  f.values[0] = ComplexMatrix::Zero(s, s);
  f.values[2] = ComplexMatrix::Zero(s, s);
  for (int j = 1; j <= 3; ++j) {
    add_at_last_factor(f.values[0], e.block(n - 1, j), j);
    add_at_last_factor(f.values[2], e.block(n - 1, j), wrap_index(j + 2));
  }
  return f;
}

// Σ_q f(v_q) ⊗ e_qq
inline ComplexMatrix assemble(const V0Form& f, Index cap = kDefaultDenseCap) {
  const Index s = f.values[0].rows();
  if (3 * s > cap) throw DomainError("dense dimension " + std::to_string(3 * s) + " exceeds cap " + std::to_string(cap));
  ComplexMatrix d = ComplexMatrix::Zero(3 * s, 3 * s);
  for (int q = 1; q <= 3; ++q) add_at_last_factor(d, f.at(q), q);
  return d;
}

inline ComplexMatrix to_dense(const GasketElement& e, Index cap) { return assemble(to_v0form(e, cap), cap); }

namespace detail {

// Flattened index of the word (a, b, 2, ..., 2) with g-1 trailing 2s.
inline Index tail_index(int a, int b, int g) {
  return (a - 1) * pow3(g) + (b - 1) * pow3(g - 1) + (pow3(g - 1) - 1) / 2;
}

// Hilbert-Schmidt projection of a dense matrix onto A_n.
inline GasketElement project_dense(const ComplexMatrix& a, int n) {
  GasketElement e(n);
  const Index ones = (pow3(n) - 1) / 2;  // the word 2...2 of length n
  for (int j = 1; j <= 3; ++j) {
    const Index i = (j - 1) * pow3(n) + ones;
    e.set_xi(j, a(i, i));
  }
  for (int k = 0; k < n; ++k) {
    const int g = n - k;
    const Index stride = pow3(g + 1);
    const Index dim = pow3(k);
    for (int j = 1; j <= 3; ++j) {
      const Index t1 = tail_index(j, 1, g);
      const Index t2 = tail_index(wrap_index(j + 2), 3, g);
      ComplexMatrix x(dim, dim);
      for (Index c = 0; c < dim; ++c)
        for (Index r = 0; r < dim; ++r)
          x(r, c) = 0.5 * (a(r * stride + t1, c * stride + t1) + a(r * stride + t2, c * stride + t2));
      e.set_block(k, j, x);
    }
  }
  return e;
}

}  // namespace detail

struct Membership {
  GasketElement element;
  double residual;
};

// Projects onto A_n and reports the Frobenius distance to the input.
inline Membership project_to_algebra(const ComplexMatrix& a, int n) {
  if (n < 0) throw DomainError("level must be nonnegative");
  if (a.rows() != pow3(n + 1) || a.cols() != pow3(n + 1))
    throw DomainError("matrix must be " + std::to_string(pow3(n + 1)) + "x" + std::to_string(pow3(n + 1)) +
                      " for level " + std::to_string(n));
  GasketElement e = detail::project_dense(a, n);
  const double residual = (a - to_dense(e)).norm();
  return {std::move(e), residual};
}

inline GasketElement from_dense(const ComplexMatrix& a, int n, double rel_tol = 1e-10) {
  auto [e, residual] = project_to_algebra(a, n);
  if (residual > rel_tol * std::max(1.0, a.norm()))
    throw MembershipError("matrix is not in A_" + std::to_string(n) + " (residual " + std::to_string(residual) + ")",
                          residual);
  return std::move(e);
}

inline GasketElement v0form_to_element(const V0Form& f, double rel_tol = 1e-10) {
  return from_dense(assemble(f), f.level, rel_tol);
}

inline double osc(const V0Form& f) {
  double best = 0.0;
  for (int p = 1; p <= 3; ++p)
    for (int q = p + 1; q <= 3; ++q) best = std::max(best, op_norm_structured(f.at(p) - f.at(q)));
  return best;
}

inline double osc(const GasketElement& e) { return osc(to_v0form(e)); }

// ‖dense(b) − dense(c) ⊗ I^{⊗(level(b) − level(c))}‖ without forming the
// ambient matrices. Each step splits off the last tensor factor: position 2
// recurses on ρ(b), positions 1 and 3 are handled at dimension 3^level(b).
inline double padded_difference_norm(const GasketElement& b, const GasketElement& c) {
  const int m = b.level();
  const int p = c.level();
  if (p > m) throw DomainError("padded difference needs level(c) <= level(b)");
  if (p == m) return norm(b - c);
  const V0Form fb = to_v0form(b);
  ComplexMatrix padded;
  if (p == m - 1) {
    padded = to_dense(c);
  } else {
    padded = kron(to_dense(c), kron_power(identity_matrix(3), m - 1 - p));
  }
  double best = padded_difference_norm(restrict(b), c);
  best = std::max(best, op_norm_structured(fb.at(1) - padded));
  best = std::max(best, op_norm_structured(fb.at(3) - padded));
  return best;
}

}  // namespace ncgasket
