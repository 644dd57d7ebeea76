#pragma once

// Level Hilbert spaces H_n = (C^3)^{⊗n} ⊗ E, where E is spanned by the six
// off-diagonal matrix units e_kl. F_n transposes the matrix unit, π_n(a) acts
// through ρ_n(a) with the last factor multiplying e_kl from the left, and the
// Dirac operator is D = ⊕ 2^n F_n.

#include <array>
#include <limits>
#include <cmath>
#include <cstdint>

#include "energy.hpp"

namespace ncgasket {

// Ordered off-diagonal pairs (k,l) in storage order.
inline constexpr std::array<std::array<int, 2>, 6> kEdgePairs{{{1, 2}, {1, 3}, {2, 1}, {2, 3}, {3, 1}, {3, 2}}};

inline int edge_slot(int k, int l) {
  require_letter(k, "edge source");
  require_letter(l, "edge target");
  if (k == l) throw DomainError("edge endpoints must differ");
  for (int s = 0; s < 6; ++s)
    if (kEdgePairs[static_cast<std::size_t>(s)][0] == k && kEdgePairs[static_cast<std::size_t>(s)][1] == l) return s;
  return -1;
}

inline int reversed_slot(int s) {
  const auto& p = kEdgePairs[static_cast<std::size_t>(s)];
  return edge_slot(p[1], p[0]);
}

inline Index hilbert_dim(int n) { return 6 * pow3(n); }

// Amplitude of (σ, (k,l)) is stored at σ.index() * 6 + edge_slot(k,l).
struct EdgeStateVector {
  int level = 0;
  ComplexVector amplitudes;

  explicit EdgeStateVector(int n = 0) : level(n), amplitudes(ComplexVector::Zero(hilbert_dim(n))) {
    if (n < 0) throw DomainError("level must be nonnegative");
  }

  Complex& at(const Word& sigma, int k, int l) {
    check_word(sigma);
    return amplitudes(sigma.index() * 6 + edge_slot(k, l));
  }
  Complex at(const Word& sigma, int k, int l) const {
    check_word(sigma);
    return amplitudes(sigma.index() * 6 + edge_slot(k, l));
  }
  double norm() const { return amplitudes.norm(); }

 private:
  void check_word(const Word& sigma) const {
    if (sigma.size() != level) throw DomainError("word length must equal the state level");
  }
};

inline EdgeStateVector apply_F(const EdgeStateVector& v) {
  EdgeStateVector out(v.level);
  for (Index s = 0; s < pow3(v.level); ++s)
    for (int e = 0; e < 6; ++e) out.amplitudes(s * 6 + reversed_slot(e)) = v.amplitudes(s * 6 + e);
  return out;
}

inline EdgeStateVector apply_pi(const GasketElement& a, const EdgeStateVector& v) {
  if (v.level > a.level()) throw DomainError("state level exceeds element level");
  const V0Form f = to_v0form(restrict_to(a, v.level));
  const Index dim = pow3(v.level);
  EdgeStateVector out(v.level);
  for (int e = 0; e < 6; ++e) {
    const int k = kEdgePairs[static_cast<std::size_t>(e)][0];
    ComplexVector x(dim);
    for (Index s = 0; s < dim; ++s) x(s) = v.amplitudes(s * 6 + e);
    const ComplexVector y = f.at(k) * x;
    for (Index s = 0; s < dim; ++s) out.amplitudes(s * 6 + e) = y(s);
  }
  return out;
}

inline ComplexMatrix dense_F(int n) {
  const Index d = hilbert_dim(n);
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  for (Index s = 0; s < pow3(n); ++s)
    for (int e = 0; e < 6; ++e) m(s * 6 + reversed_slot(e), s * 6 + e) = 1.0;
  return m;
}

// π_n(a) as a dense matrix, read directly off the dense realization of ρ_n(a):
// the row (σ, p) of ρ_n(a) against e_kl only sees the diagonal position p = k.
inline ComplexMatrix dense_pi(const GasketElement& a, int n) {
  if (n > a.level()) throw DomainError("level exceeds element level");
  const ComplexMatrix r = to_dense(restrict_to(a, n));
  const Index words = pow3(n);
  ComplexMatrix m = ComplexMatrix::Zero(hilbert_dim(n), hilbert_dim(n));
  for (int e = 0; e < 6; ++e) {
    const int k = kEdgePairs[static_cast<std::size_t>(e)][0];
    for (Index s = 0; s < words; ++s)
      for (Index t = 0; t < words; ++t) m(s * 6 + e, t * 6 + e) = r(3 * s + k - 1, 3 * t + k - 1);
  }
  return m;
}

inline double commutator_norm(const GasketElement& a, int n) {
  if (n < 0 || n > a.level()) throw DomainError("commutator level outside 0..level");
  return osc(to_v0form(restrict_to(a, n)));
}

inline double dense_commutator_norm(const GasketElement& a, int n) {
  const ComplexMatrix f = dense_F(n);
  const ComplexMatrix p = dense_pi(a, n);
  return op_norm(f * p - p * f);
}

// Trace of π_n(a) on H_n: every diagonal letter k meets two units e_kl.
inline Complex hilbert_trace_pi(const GasketElement& a, int n) {
  if (n > a.level()) throw DomainError("level exceeds element level");
  return 2.0 * trace(restrict_to(a, n));
}

// tr |[D_n, π_n(a)]|² = 4^n · E_n[ρ_n(a)].
inline double commutator_hs_square(const GasketElement& a, int n) {
  if (n < 0 || n > a.level()) throw DomainError("commutator level outside 0..level");
  return std::pow(4.0, n) * dirichlet_energy(restrict_to(a, n));
}

inline double dense_commutator_hs_square(const GasketElement& a, int n) {
  const ComplexMatrix f = dense_F(n);
  const ComplexMatrix p = dense_pi(a, n);
  return std::pow(4.0, n) * (f * p - p * f).squaredNorm();
}

struct LipNorm {
  double value = 0.0;
  bool stationary = false;
  int argmax_level = 0;
};

// max_{k ≤ cutoff} 2^k osc(ρ_k(a)). Affine chains satisfy
// 2 osc(λ^{1/2} x) ≤ osc(x), so the supremum is reached by the base level.
inline LipNorm lip_norm(const RestrictionChain& chain, int cutoff) {
  validate_chain(chain);
  if (cutoff < 0) throw DomainError("cutoff must be nonnegative");
  const int top = std::min(cutoff, chain.top());
  LipNorm r;
  for (int k = 0; k <= top; ++k) {
    const double v = std::ldexp(osc(chain.at(k)), k);
    if (v > r.value) {
      r.value = v;
      r.argmax_level = k;
    }
  }
  r.stationary = chain.affine() && top >= chain.tail->base_level;
  return r;
}

struct LipApproximation {
  std::vector<double> distance;  // ‖ρ_top(a) − ρ_k(a) ⊗ I‖
  std::vector<double> bound;     // 2^{-k} L(a)
  double worst_margin = INFINITY;
};

inline LipApproximation lip_approximation(const RestrictionChain& chain, double lip) {
  validate_chain(chain);
  LipApproximation r;
  const auto& top = chain.levels.back();
  for (int k = 0; k <= chain.top(); ++k) {
    const double d = padded_difference_norm(top, chain.at(k));
    const double b = std::ldexp(lip, -k);
    r.distance.push_back(d);
    r.bound.push_back(b);
    r.worst_margin = std::min(r.worst_margin, b - d);
  }
  return r;
}

namespace detail {

inline double counting_double(double t) {
  double total = 0.0, dim = 6.0;
  for (int k = 0; k < 1024 && std::ldexp(1.0, k) <= t; ++k) {
    total += dim;
    dim *= 3.0;
  }
  return total;
}

}  // namespace detail

// N(T) = Σ_{2^k ≤ T} dim H_k.
inline std::uint64_t eigenvalue_counting(double t) {
  if (!(t >= 1.0)) throw DomainError("counting function needs T >= 1");
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t total = 0;
  std::uint64_t dim = 6;
  for (int k = 0; std::ldexp(1.0, k) <= t; ++k) {
    if (dim > kMax - total) throw DomainError("N(T) overflows 64 bits for T = " + std::to_string(t));
    total += dim;
    if (dim > kMax / 3) {
      if (std::ldexp(1.0, k + 1) <= t) throw DomainError("N(T) overflows 64 bits for T = " + std::to_string(t));
      break;
    }
    dim *= 3;
  }
  return total;
}

// Least-squares slope of log N(2^m) against m log 2, m = 0..floor(log2 T_max).
inline double dimension_fit(double t_max) {
  if (!(t_max >= 2.0)) throw DomainError("dimension fit needs T_max >= 2");
  const int mmax = static_cast<int>(std::floor(std::log2(t_max) + 1e-12));
  if (mmax > 600) throw DomainError("dimension fit needs T_max <= 2^600");
  Eigen::VectorXd x(mmax + 1), y(mmax + 1);
  for (int m = 0; m <= mmax; ++m) {
    x(m) = m * std::log(2.0);
    y(m) = std::log(detail::counting_double(std::ldexp(1.0, m)));
  }
  const double xm = x.mean();
  const double ym = y.mean();
  return ((x.array() - xm) * (y.array() - ym)).sum() / ((x.array() - xm).square().sum());
}

inline double metric_dimension() { return std::log(3.0) / std::log(2.0); }

inline double energy_dimension() { return 2.0 - std::log(5.0 / 3.0) / std::log(2.0); }

}  // namespace ncgasket
