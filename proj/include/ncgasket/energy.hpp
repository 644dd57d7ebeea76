#pragma once

// Dirichlet energy E_n[b] = Σ_{i≠j} tr |b(v_i) − b(v_j)|², unnormalized trace.

#include <Eigen/QR>

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "extension.hpp"
#include "random.hpp"

namespace ncgasket {

inline constexpr double kEnergyRenormalization = 5.0 / 3.0;
inline constexpr double kHarmonicEnergyRatio = 3.0 / 5.0;

struct EnergyReport {
  int level = 0;
  double energy = 0.0;
  double renormalized = 0.0;
  std::array<double, 3> per_pair{};  // pairs (1,2), (1,3), (2,3)
};

namespace detail {

// ‖a − b‖_F² accumulated in extended precision, so energies computed along
// different decompositions agree to the last bit or two.
inline long double distance_squared(const ComplexMatrix& a, const ComplexMatrix& b) {
  long double acc = 0.0L;
  for (Index c = 0; c < a.cols(); ++c)
    for (Index r = 0; r < a.rows(); ++r) acc += static_cast<long double>(std::norm(a(r, c) - b(r, c)));
  return acc;
}

inline long double energy_sum(const V0Form& f) {
  return 2.0L * (distance_squared(f.at(1), f.at(2)) + distance_squared(f.at(1), f.at(3)) +
                 distance_squared(f.at(2), f.at(3)));
}

}  // namespace detail

inline EnergyReport energy(const V0Form& f) {
  EnergyReport r;
  r.level = f.level;
  r.per_pair[0] = static_cast<double>(detail::distance_squared(f.at(1), f.at(2)));
  r.per_pair[1] = static_cast<double>(detail::distance_squared(f.at(1), f.at(3)));
  r.per_pair[2] = static_cast<double>(detail::distance_squared(f.at(2), f.at(3)));
  r.energy = static_cast<double>(detail::energy_sum(f));
  r.renormalized = std::pow(kEnergyRenormalization, f.level) * r.energy;
  return r;
}

inline double dirichlet_energy(const GasketElement& e) { return energy(to_v0form(e)).energy; }

inline double renormalized_energy(const GasketElement& e) { return energy(to_v0form(e)).renormalized; }

// (e_ij* ⊗ id) applied to every boundary value; the last factor is untouched.
inline V0Form slice(const V0Form& f, int i, int j) {
  if (f.level < 1) throw DomainError("slice needs level >= 1");
  V0Form out;
  out.level = f.level - 1;
  for (int q = 1; q <= 3; ++q) out.values[static_cast<std::size_t>(q - 1)] = first_factor_block(f.at(q), i, j);
  return out;
}

inline V0Form slice(const GasketElement& e, int i, int j) { return slice(to_v0form(e), i, j); }

inline V0Form slice(const ComplexMatrix& dense, int n, int i, int j) {
  if (dense.rows() != pow3(n + 1)) throw DomainError("dense matrix does not match level");
  V0Form f;
  f.level = n;
  for (int q = 1; q <= 3; ++q) f.values[static_cast<std::size_t>(q - 1)] = last_factor_block(dense, q);
  return slice(f, i, j);
}

struct SelfSimilarity {
  double lhs;
  double rhs;
};

inline SelfSimilarity check_selfsimilarity(const GasketElement& e) {
  if (e.level() < 1) throw DomainError("self-similarity needs level >= 1");
  const V0Form f = to_v0form(e);
  long double rhs = 0.0L;
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) rhs += detail::energy_sum(slice(f, i, j));
  return {static_cast<double>(detail::energy_sum(f)), static_cast<double>(rhs)};
}

struct FiberMinimum {
  GasketElement minimizer;
  double min_energy = 0.0;
  double harmonic_deviation = 0.0;  // max |minimizer − harmonic_extension(b)|
  bool rank_deficient = false;
  std::string warning;
};

namespace detail {

// Minimizes E_{n+1} over b ⊗ e22 + Σ_j X_j ⊗ β^1_j by assembling the real
// quadratic form from energy evaluations (exact for a quadratic function).
inline FiberMinimum solve_fiber_quadratic(const GasketElement& b) {
  const int n = b.level();
  if (n > 1) throw DomainError("fiber minimization supports levels 0 and 1 only");
  const GasketElement base = coembed(b);
  const Index dim = pow3(n);
  const Index per_block = 2 * dim * dim;
  const Index p = 3 * per_block;

  auto element_of = [&](const Eigen::VectorXd& z) {
    GasketElement e = base;
    for (int j = 1; j <= 3; ++j) {
      ComplexMatrix x(dim, dim);
      for (Index c = 0; c < dim; ++c)
        for (Index r = 0; r < dim; ++r) {
          const Index o = (j - 1) * per_block + 2 * (c * dim + r);
          x(r, c) = Complex(z(o), z(o + 1));
        }
      e.set_block(n, j, x);
    }
    return e;
  };
  auto energy_at = [&](const Eigen::VectorXd& z) { return dirichlet_energy(element_of(z)); };

  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(p);
  const double c0 = energy_at(zero);
  Eigen::VectorXd plus(p), minus(p), g(p);
  Eigen::MatrixXd q(p, p);
  for (Index i = 0; i < p; ++i) {
    Eigen::VectorXd z = zero;
    z(i) = 1.0;
    plus(i) = energy_at(z);
    z(i) = -1.0;
    minus(i) = energy_at(z);
    g(i) = 0.25 * (plus(i) - minus(i));
    q(i, i) = 0.5 * (plus(i) + minus(i)) - c0;
  }
  for (Index i = 0; i < p; ++i)
    for (Index k = i + 1; k < p; ++k) {
      Eigen::VectorXd z = zero;
      z(i) = 1.0;
      z(k) = 1.0;
      q(i, k) = q(k, i) = 0.5 * (energy_at(z) - plus(i) - plus(k) + c0);
    }

  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(q);
  cod.setThreshold(1e-12);
  const Eigen::VectorXd zstar = cod.solve(-g);

  FiberMinimum out;
  out.minimizer = element_of(zstar);
  out.min_energy = dirichlet_energy(out.minimizer);
  out.harmonic_deviation = max_abs_diff(out.minimizer, harmonic_extension(b));
  if (cod.rank() < p) {
    out.rank_deficient = true;
    out.warning = "singular normal equations (rank " + std::to_string(cod.rank()) + " of " + std::to_string(p) +
                  "); returned the minimum-norm solution";
  }
  return out;
}

}  // namespace detail

inline FiberMinimum minimize_over_fiber(const GasketElement& b) {
  FiberMinimum m = detail::solve_fiber_quadratic(b);
  if (m.harmonic_deviation > 1e-8)
    throw Error("fiber minimizer differs from the harmonic extension by " + std::to_string(m.harmonic_deviation));
  return m;
}

struct EnergySequence {
  std::vector<double> values;  // (5/3)^m E_m[ρ_m(b)]
  bool monotone = true;
  bool stationary = false;  // provably constant beyond the chain's base level
};

inline EnergySequence renormalized_energy_sequence(const RestrictionChain& chain) {
  validate_chain(chain);
  EnergySequence s;
  for (const auto& e : chain.levels) s.values.push_back(renormalized_energy(e));
  for (std::size_t m = 0; m + 1 < s.values.size(); ++m)
    if (s.values[m + 1] < s.values[m] - 1e-12 * std::max(1.0, s.values[m])) s.monotone = false;
  if (!s.monotone) throw Error("renormalized energy sequence is not monotone; chain is not in A_inf");
  s.stationary = chain.harmonic();
  return s;
}

// E_∞ as (truncation value, monotonicity certificate, stationarity flag).
struct EnergyLimit {
  double value = 0.0;
  bool monotone = true;
  bool stationary = false;
};

inline EnergyLimit energy_limit(const RestrictionChain& chain) {
  const auto s = renormalized_energy_sequence(chain);
  return {s.values.back(), s.monotone, s.stationary};
}

// Accumulated geometric bound (Σ_{n≥0} (3/5)^{(n+1)/2})² for ‖b‖² ≤ C·E_∞[b]
// when ρ_0(b) = 0.
inline double norm_energy_constant() {
  const double r = std::sqrt(kHarmonicEnergyRatio);
  const double s = r / (1.0 - r);
  return s * s;
}

struct NormEnergyBounds {
  std::vector<double> lhs;  // ‖ρ_{n+1}(b) − ρ_n(b) ⊗ I‖²
  std::vector<double> rhs;  // (3/5)^{n+1} E_∞
  double worst_margin = INFINITY;
  bool global_checked = false;
  double global_lhs = 0.0;  // ‖ρ_top(b)‖²
  double global_rhs = 0.0;  // C·E_∞
  double global_margin = INFINITY;
};

inline NormEnergyBounds check_norm_energy_bounds(const RestrictionChain& chain, double e_inf) {
  validate_chain(chain);
  NormEnergyBounds r;
  for (int n = 0; n < chain.top(); ++n) {
    const double d = padded_difference_norm(chain.at(n + 1), chain.at(n));
    const double lhs = d * d;
    const double rhs = std::pow(kHarmonicEnergyRatio, n + 1) * e_inf;
    r.lhs.push_back(lhs);
    r.rhs.push_back(rhs);
    r.worst_margin = std::min(r.worst_margin, rhs - lhs);
  }
  const auto& b0 = chain.at(0);
  const double scale = std::max(1.0, norm(chain.levels.back()));
  if (std::abs(b0.xi(1)) <= 1e-12 * scale && std::abs(b0.xi(2)) <= 1e-12 * scale &&
      std::abs(b0.xi(3)) <= 1e-12 * scale) {
    const double nb = norm(chain.levels.back());
    r.global_checked = true;
    r.global_lhs = nb * nb;
    r.global_rhs = norm_energy_constant() * e_inf;
    r.global_margin = r.global_rhs - r.global_lhs;
  }
  return r;
}

// Gram matrix G_pq = tr(a_p* a_q) of the boundary values, divided by the
// ambient dimension 3^{n+1}. Symmetric extension acts linearly on it, which
// gives τ(b*b) for the extended element without building deep levels.
inline Eigen::Matrix3cd normalized_boundary_gram(const V0Form& f) {
  Eigen::Matrix3cd g;
  for (int p = 1; p <= 3; ++p)
    for (int q = 1; q <= 3; ++q) g(p - 1, q - 1) = (f.at(p).adjoint() * f.at(q)).trace();
  return g / static_cast<double>(3 * f.at(1).rows());
}

inline Eigen::Matrix3cd extend_gram(const Eigen::Matrix3cd& g, double t) {
  // B_j = Σ_i c(j,i) a_i
  Eigen::Matrix3d c = Eigen::Matrix3d::Zero();
  for (int j = 1; j <= 3; ++j) {
    c(j - 1, j - 1) += 1.0 - t;
    c(j - 1, wrap_index(j - 1) - 1) += 1.0 - t;
    c(j - 1, wrap_index(j + 1) - 1) += 2.0 * t - 1.0;
  }
  // Boundary value p of the extension, compressed to last-factor position q,
  // is Σ_i L(p,q)_i a_i.
  auto coeff = [&](int p, int q) -> Eigen::RowVector3d {
    if (p == 2) return Eigen::RowVector3d::Unit(q - 1);
    if (p == 1) return c.row(q - 1);
    return c.row(wrap_index(q + 1) - 1);
  };
  Eigen::Matrix3cd out = Eigen::Matrix3cd::Zero();
  for (int p = 1; p <= 3; ++p)
    for (int r = 1; r <= 3; ++r)
      for (int q = 1; q <= 3; ++q) {
        const Eigen::RowVector3d lp = coeff(p, q);
        const Eigen::RowVector3d lr = coeff(r, q);
        out(p - 1, r - 1) += (lp.cast<Complex>() * g * lr.transpose().cast<Complex>())(0, 0);
      }
  return out / 3.0;
}


// τ(b*b) for b = λ^t_{[n,∞)}(a), iterating the Gram recursion to its limit.
inline double extended_tau_square(const GasketElement& a, double t) {
  require_extension_parameter(t);
  Eigen::Matrix3cd g = normalized_boundary_gram(to_v0form(a));
  double prev = g.trace().real();
  for (int it = 0; it < 1000; ++it) {
    g = extend_gram(g, t);
    const double cur = g.trace().real();
    if (std::abs(cur - prev) <= 1e-16 * std::max(1.0, std::abs(cur))) return cur;
    prev = cur;
  }
  return prev;
}

// ‖b‖² / (E_∞[b] + τ(b*b)) for the harmonic extension b of a. The extension
// preserves the norm and keeps the renormalized energy constant.
inline double sobolev_ratio(const GasketElement& a) {
  const double nb = norm(a);
  const double denom = renormalized_energy(a) + extended_tau_square(a, kHarmonicT);
  if (denom <= 0.0) throw DomainError("sobolev ratio of the zero element");
  return nb * nb / denom;
}

inline double sobolev_sample(int sample_count, int level_cap, std::uint64_t seed) {
  if (sample_count < 1) throw DomainError("sample_count must be at least 1");
  if (level_cap < 0) throw DomainError("level_cap must be nonnegative");
  Rng rng(seed);
  double best = 0.0;
  for (int s = 0; s < sample_count; ++s) {
    const int n = rng.uniform_int(0, level_cap);
    best = std::max(best, sobolev_ratio(random_element(rng, n)));
  }
  return best;
}

}  // namespace ncgasket
