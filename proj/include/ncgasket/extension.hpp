#pragma once

// Symmetric extensions λ^t : A_n → A_{n+1} and restriction chains.
//
// λ^t(b) = b ⊗ e22 + Σ_j B_j ⊗ β^1_j with
//   B_j = (1-t)(a_j + a_{j-1}) + (2t-1) a_{j+1},   a_q = b(v_q).
// t = 3/5 is the harmonic extension, t = 1/2 the affine one.

#include <cmath>
#include <optional>
#include <vector>

#include "v0form.hpp"

namespace ncgasket {

inline constexpr double kHarmonicT = 0.6;
inline constexpr double kAffineT = 0.5;

inline void require_extension_parameter(double t) {
  if (!(t >= 0.5 && t < 1.0)) throw DomainError("extension parameter t must lie in [1/2, 1)");
}

inline std::array<ComplexMatrix, 3> extension_blocks(const V0Form& f, double t) {
  std::array<ComplexMatrix, 3> out;
  for (int j = 1; j <= 3; ++j)
    out[static_cast<std::size_t>(j - 1)] =
        (1.0 - t) * (f.at(j) + f.at(wrap_index(j - 1))) + (2.0 * t - 1.0) * f.at(wrap_index(j + 1));
  return out;
}

inline GasketElement symmetric_extension(const GasketElement& b, double t) {
  require_extension_parameter(t);
  const auto blocks = extension_blocks(to_v0form(b), t);
  GasketElement out = coembed(b);
  for (int j = 1; j <= 3; ++j) out.set_block(b.level(), j, blocks[static_cast<std::size_t>(j - 1)]);
  return out;
}

inline GasketElement harmonic_extension(const GasketElement& b) { return symmetric_extension(b, kHarmonicT); }

inline GasketElement extend_to(const GasketElement& b, double t, int m) {
  if (m < b.level()) throw DomainError("extension target below the element's level");
  require_extension_parameter(t);
  GasketElement cur = b;
  while (cur.level() < m) cur = symmetric_extension(cur, t);
  return cur;
}

// Bound on ‖λ_{[n,∞)}(b) − λ_{[n,m]}(b)‖ from osc(λ^t x) ≤ t·osc(x).
inline double extend_tail_bound(const GasketElement& b, double t, int m) {
  require_extension_parameter(t);
  if (m < b.level()) throw DomainError("extension target below the element's level");
  return osc(b) * std::pow(t, m - b.level() + 1) / (1.0 - t);
}

// Elements (ρ_0(a), ..., ρ_top(a)) of an element of A_∞. When the chain was
// produced by iterating a fixed symmetric extension from some base level on,
// the tail records it so that later consumers can continue the chain exactly.
struct ExtensionTail {
  int base_level;
  double t;
};

struct RestrictionChain {
  std::vector<GasketElement> levels;
  std::optional<ExtensionTail> tail;

  int top() const { return static_cast<int>(levels.size()) - 1; }
  const GasketElement& at(int n) const {
    if (n < 0 || n > top()) throw DomainError("chain level " + std::to_string(n) + " not available");
    return levels[static_cast<std::size_t>(n)];
  }
  bool harmonic() const { return tail && tail->t == kHarmonicT; }
  bool affine() const { return tail && tail->t == kAffineT; }
};

inline RestrictionChain make_extension_chain(const GasketElement& a, double t, int top) {
  require_extension_parameter(t);
  if (top < a.level()) throw DomainError("chain top below the element's level");
  RestrictionChain chain;
  for (int k = 0; k < a.level(); ++k) chain.levels.push_back(restrict_to(a, k));
  chain.levels.push_back(a);
  while (chain.top() < top) chain.levels.push_back(symmetric_extension(chain.levels.back(), t));
  chain.tail = ExtensionTail{a.level(), t};
  return chain;
}

// Largest violation of ρ(levels[n+1]) = levels[n], relative to the element size.
inline double chain_consistency_error(const RestrictionChain& chain) {
  double worst = 0.0;
  for (int n = 0; n < chain.top(); ++n) {
    const auto& hi = chain.at(n + 1);
    const auto& lo = chain.at(n);
    if (hi.level() != n + 1 || lo.level() != n) throw DomainError("chain entry has the wrong level");
    worst = std::max(worst, max_abs_diff(restrict(hi), lo) / std::max(1.0, norm(lo)));
  }
  return worst;
}

inline void validate_chain(const RestrictionChain& chain, double tol = 1e-10) {
  if (chain.levels.empty()) throw DomainError("empty restriction chain");
  for (int n = 0; n <= chain.top(); ++n)
    if (chain.at(n).level() != n) throw DomainError("chain entry " + std::to_string(n) + " has the wrong level");
  const double err = chain_consistency_error(chain);
  if (err > tol) throw DomainError("restriction chain is inconsistent (error " + std::to_string(err) + ")");
}

}  // namespace ncgasket
