#pragma once

// Truncated zeta functions f(s) = Σ_j 2^{-sj} w_j over levels and their
// residues. A geometric tail w_j = w_L q^{j-L} (j ≥ L) sums to
// w_L 2^{-sL} / (1 − q 2^{-s}), which has a simple pole at s = log2 q with
// residue w_L q^{-L} / log 2.

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "spectral.hpp"

namespace ncgasket {

struct GeometricTail {
  double ratio;        // q
  int first_level;     // L, first level not in the partial sum
  Complex first_term;  // w_L
};

struct ZetaProfile {
  std::vector<double> s_grid;
  std::vector<Complex> weights;  // w_0 .. w_cutoff
  std::vector<Complex> partial_sums;
  std::vector<Complex> tail_corrected;  // NaN when there is no tail model
  int cutoff = 0;
  std::optional<GeometricTail> tail;
};

inline Complex partial_sum(const std::vector<Complex>& w, double s) {
  Complex acc = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) acc += std::exp2(-s * static_cast<double>(j)) * w[j];
  return acc;
}

inline Complex tail_value(const GeometricTail& t, double s) {
  const double denom = 1.0 - t.ratio * std::exp2(-s);
  return t.first_term * std::exp2(-s * t.first_level) / denom;
}

inline Complex zeta_value(const ZetaProfile& p, double s) {
  const Complex head = partial_sum(p.weights, s);
  if (!p.tail) return head;
  return head + tail_value(*p.tail, s);
}

inline ZetaProfile make_profile(std::vector<Complex> weights, const std::vector<double>& s_grid,
                                std::optional<GeometricTail> tail, double divergence_abscissa) {
  ZetaProfile p;
  p.s_grid = s_grid;
  p.cutoff = static_cast<int>(weights.size()) - 1;
  p.weights = std::move(weights);
  p.tail = tail;
  const Complex nan(std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN());
  for (double s : s_grid) {
    if (!tail && s <= divergence_abscissa)
      throw DomainError("s = " + std::to_string(s) + " is at or below the abscissa of convergence " +
                        std::to_string(divergence_abscissa) + " and no tail model is available");
    p.partial_sums.push_back(partial_sum(p.weights, s));
    p.tail_corrected.push_back(tail ? p.partial_sums.back() + tail_value(*tail, s) : nan);
  }
  return p;
}

inline std::vector<Complex> trace_weights(const RestrictionChain& chain, int cutoff) {
  std::vector<Complex> w;
  for (int j = 0; j <= cutoff; ++j) w.push_back(trace(chain.at(j)));
  return w;
}

inline std::vector<Complex> energy_weights(const RestrictionChain& chain, int cutoff) {
  std::vector<Complex> w;
  for (int j = 0; j <= cutoff; ++j) w.push_back(commutator_hs_square(chain.at(j), j));
  return w;
}

// Σ_j 2^{-sj} tr ρ_j(b). Any symmetric extension triples the trace, so chains
// that end in one get the exact tail with ratio 3.
inline ZetaProfile zeta_trace(const RestrictionChain& chain, const std::vector<double>& s_grid, int cutoff) {
  validate_chain(chain);
  if (cutoff < 0 || cutoff > chain.top()) throw DomainError("cutoff outside the chain");
  auto w = trace_weights(chain, cutoff);
  std::optional<GeometricTail> tail;
  if (chain.tail && cutoff >= chain.tail->base_level) tail = GeometricTail{3.0, cutoff + 1, 3.0 * w.back()};
  return make_profile(std::move(w), s_grid, tail, metric_dimension());
}

// Σ_j 2^{-sj} tr |[D_j, π_j(a)]|². Harmonic chains have weights growing
// exactly by 4 · 3/5 per level.
inline ZetaProfile energy_zeta(const RestrictionChain& chain, const std::vector<double>& s_grid, int cutoff) {
  validate_chain(chain);
  if (cutoff < 0 || cutoff > chain.top()) throw DomainError("cutoff outside the chain");
  auto w = energy_weights(chain, cutoff);
  std::optional<GeometricTail> tail;
  constexpr double q = 4.0 * kHarmonicEnergyRatio;
  if (chain.harmonic() && cutoff >= chain.tail->base_level) tail = GeometricTail{q, cutoff + 1, q * w.back()};
  return make_profile(std::move(w), s_grid, tail, energy_dimension());
}

// Geometric tail inferred from the last five weights when they grow by 2^d
// to relative accuracy 1e-6.
inline std::optional<GeometricTail> certify_tail(const ZetaProfile& p, double d) {
  const double q = std::exp2(d);
  const int n = static_cast<int>(p.weights.size());
  if (n < 5) return std::nullopt;
  for (int i = n - 4; i < n; ++i) {
    const Complex prev = p.weights[static_cast<std::size_t>(i - 1)];
    const Complex cur = p.weights[static_cast<std::size_t>(i)];
    if (std::abs(prev) == 0.0) return std::nullopt;
    if (std::abs(cur / prev - q) > 1e-6 * q) return std::nullopt;
  }
  return GeometricTail{q, n, q * p.weights.back()};
}

inline Complex residue_analytic(const GeometricTail& tail, double d) {
  if (std::abs(tail.ratio * std::exp2(-d) - 1.0) > 1e-12) return 0.0;  // no pole at d
  return tail.first_term * std::exp2(-d * tail.first_level) / std::log(2.0);
}

struct ResidueEstimate {
  Complex value;
  double error_estimate = 0.0;
  bool analytic = false;
};

// (s − d) f(s) at s = d + 10^{-q}, q = 1..4, extrapolated to s = d.
inline ResidueEstimate residue_numeric(const ZetaProfile& profile, double d) {
  ZetaProfile p = profile;
  if (!p.tail) p.tail = certify_tail(p, d);
  if (!p.tail) throw DomainError("geometric tail not certified; residue cannot be estimated");
  constexpr int kLadder = 4;
  std::vector<std::vector<Complex>> table(kLadder);
  for (int i = 0; i < kLadder; ++i) {
    const double h = std::pow(10.0, -(i + 1));
    table[static_cast<std::size_t>(i)].push_back(h * zeta_value(p, d + h));
    for (int k = 1; k <= i; ++k) {
      const double f = std::pow(10.0, k);
      const auto& row = table[static_cast<std::size_t>(i)];
      const auto& above = table[static_cast<std::size_t>(i - 1)];
      table[static_cast<std::size_t>(i)].push_back((f * row[static_cast<std::size_t>(k - 1)] -
                                                    above[static_cast<std::size_t>(k - 1)]) /
                                                   (f - 1.0));
    }
  }
  const auto& last = table.back();
  ResidueEstimate r;
  r.value = last.back();
  r.error_estimate = std::abs(last.back() - last[last.size() - 2]);
  return r;
}

inline ResidueEstimate residue_estimate(const ZetaProfile& profile, double d) {
  if (profile.tail) return {residue_analytic(*profile.tail, d), 0.0, true};
  return residue_numeric(profile, d);
}

// Res_{s=δ} of the energy zeta function of a finite-energy chain.
inline ResidueEstimate energy_residue(const RestrictionChain& chain) {
  const auto seq = renormalized_energy_sequence(chain);
  if (!seq.stationary) throw DomainError("energy residue needs a chain with stationary renormalized energy");
  const auto p = energy_zeta(chain, {}, chain.top());
  return residue_estimate(p, energy_dimension());
}

}  // namespace ncgasket
