#pragma once

// Verification suites. Each suite checks one family of identities on seeded
// random inputs and reports the worst case per check.

#include <Eigen/LU>

#include <chrono>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "classical.hpp"
#include "io.hpp"
#include "random.hpp"
#include "traces.hpp"
#include "zeta.hpp"

namespace ncgasket {

struct CaseResult {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
};

struct VerificationReport {
  std::string suite;
  std::vector<CaseResult> cases;
  std::uint64_t seed = kDefaultSeed;
  double elapsed = 0.0;

  bool passed() const {
    for (const auto& c : cases)
      if (!c.pass) return false;
    return !cases.empty();
  }
};

struct SuiteOptions {
  int levels = -1;   // suite default when negative
  int samples = -1;  // suite default when negative
  std::uint64_t seed = kDefaultSeed;
};

inline Json report_to_json(const VerificationReport& r) {
  Json cases = Json::array();
  for (const auto& c : r.cases)
    cases.push_back(Json{{"name", c.name},
                         {"status", c.pass ? "pass" : "fail"},
                         {"measured", c.measured},
                         {"expected", c.expected},
                         {"tolerance", c.tolerance}});
  return Json{{"suite", r.suite},
              {"status", r.passed() ? "pass" : "fail"},
              {"cases", std::move(cases)},
              {"seed", r.seed},
              {"elapsed", r.elapsed}};
}

namespace detail {

class CaseRecorder {
 public:
  explicit CaseRecorder(std::vector<CaseResult>& out) : out_(out) {}

  // |measured − expected| ≤ tolerance
  void check(const std::string& name, double measured, double expected, double tolerance) {
    const bool ok = std::isfinite(measured) && std::abs(measured - expected) <= tolerance;
    out_.push_back({name, ok, measured, expected, tolerance});
  }

  // Tracks the sample farthest from the expected value.
  struct Worst {
    double expected;
    double value;
    bool any = false;
    void add(double v) {
      if (!any || !(std::abs(v - expected) <= std::abs(value - expected))) value = v;
      any = true;
    }
  };

 private:
  std::vector<CaseResult>& out_;
};

inline int pick(int value, int fallback) { return value < 0 ? fallback : value; }

inline std::string lvl(int n) { return "n=" + std::to_string(n); }

inline double max_abs(const ComplexMatrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

// λ^t on a dense level-n matrix via λ^t(b) = Σ_i (id ⊗ e_ii*)(b) ⊗ λ^t(e_i),
// where λ^t(e_i) = e_ii ⊗ e22 + Σ_j c_ji (e_jj ⊗ e11 + e_{j+2,j+2} ⊗ e33).
inline ComplexMatrix dense_symmetric_extension(const ComplexMatrix& b, double t) {
  ComplexMatrix out = ComplexMatrix::Zero(3 * b.rows(), 3 * b.cols());
  for (int i = 1; i <= 3; ++i) {
    Eigen::Matrix3cd w = Eigen::Matrix3cd::Zero();
    w(i - 1, i - 1) = 1.0;
    const ComplexMatrix bi = contract_last(b, w);
    ComplexMatrix li = kron(matrix_unit(3, i, i), matrix_unit(3, 2, 2));
    for (int j = 1; j <= 3; ++j) {
      double c = 0.0;
      if (i == j || i == wrap_index(j - 1)) c += 1.0 - t;
      if (i == wrap_index(j + 1)) c += 2.0 * t - 1.0;
      li += c * (kron(matrix_unit(3, j, j), matrix_unit(3, 1, 1)) +
                 kron(matrix_unit(3, wrap_index(j + 2), wrap_index(j + 2)), matrix_unit(3, 3, 3)));
    }
    out += kron(bi, li);
  }
  return out;
}

inline ComplexMatrix e22_contract(const ComplexMatrix& a) {
  return contract_last(a, ProductState::e22_functional());
}

}  // namespace detail

// 1. Blockwise algebra against dense matrices.
inline VerificationReport suite_dense_oracle(const SuiteOptions& opt) {
  VerificationReport r{"dense-oracle", {}, opt.seed};
  detail::CaseRecorder rec(r.cases);
  Rng rng(opt.seed);
  const int levels = detail::pick(opt.levels, 4);
  const int samples = detail::pick(opt.samples, 200);
  const double ts[] = {0.5, 0.6, 0.8};
  for (int n = 0; n <= levels; ++n) {
    double mul = 0, add = 0, adj = 0, res = 0, ext = 0, nrm = 0;
    for (int s = 0; s < samples; ++s) {
      const auto a = random_element(rng, n);
      const auto b = random_element(rng, n);
      const ComplexMatrix da = to_dense(a);
      const ComplexMatrix db = to_dense(b);
      mul = std::max(mul, detail::max_abs(to_dense(a * b) - da * db));
      add = std::max(add, detail::max_abs(to_dense(a + b) - (da + db)));
      adj = std::max(adj, detail::max_abs(to_dense(a.adjoint()) - da.adjoint()));
      if (n >= 1) res = std::max(res, detail::max_abs(to_dense(restrict(a)) - detail::e22_contract(da)));
      const double t = ts[s % 3];
      ext = std::max(ext, detail::max_abs(to_dense(symmetric_extension(a, t)) - detail::dense_symmetric_extension(da, t)));
      nrm = std::max(nrm, std::abs(norm(a) - op_norm(da)));
    }
    rec.check(detail::lvl(n) + " multiplication", mul, 0.0, 1e-10);
    rec.check(detail::lvl(n) + " addition", add, 0.0, 1e-10);
    rec.check(detail::lvl(n) + " adjoint", adj, 0.0, 1e-10);
    if (n >= 1) rec.check(detail::lvl(n) + " restriction", res, 0.0, 1e-10);
    rec.check(detail::lvl(n) + " symmetric extension", ext, 0.0, 1e-10);
    rec.check(detail::lvl(n) + " norm formula vs largest singular value", nrm, 0.0, 1e-8);
  }
  return r;
}

// 2. E_{n+1}[λ^{3/5} b] / E_n[b] = 3/5.
inline VerificationReport suite_eigenform(const SuiteOptions& opt) {
  VerificationReport r{"eigenform", {}, opt.seed};
  detail::CaseRecorder rec(r.cases);
  Rng rng(opt.seed);
  const int levels = detail::pick(opt.levels, 5);
  const int samples = detail::pick(opt.samples, 100);
  for (int n = 0; n <= levels; ++n) {
    detail::CaseRecorder::Worst worst{kHarmonicEnergyRatio, 0.0};
    for (int s = 0; s < samples; ++s) {
      const auto b = random_element(rng, n);
      worst.add(dirichlet_energy(harmonic_extension(b)) / dirichlet_energy(b));
    }
    rec.check(detail::lvl(n) + " energy ratio", worst.value, kHarmonicEnergyRatio, 1e-10);
  }
  return r;
}

// 3. Brute-force minimum over the fiber of ρ_n.
inline VerificationReport suite_fiber_minimization(const SuiteOptions& opt) {
  VerificationReport r{"fiber-minimization", {}, opt.seed};
  detail::CaseRecorder rec(r.cases);
  Rng rng(opt.seed);
  const int levels = std::min(detail::pick(opt.levels, 1), 1);
  const int samples = detail::pick(opt.samples, 20);
  for (int n = 0; n <= levels; ++n) {
    double value_err = 0.0, argmin_err = 0.0;
    for (int s = 0; s < samples; ++s) {
      const auto b = random_hermitian_element(rng, n);
      const auto m = detail::solve_fiber_quadratic(b);
      value_err = std::max(value_err, std::abs(m.min_energy - kHarmonicEnergyRatio * dirichlet_energy(b)));
      argmin_err = std::max(argmin_err, m.harmonic_deviation);
    }
    rec.check(detail::lvl(n) + " minimum equals 3/5 E_n", value_err, 0.0, 1e-8);
    rec.check(detail::lvl(n) + " argmin equals harmonic extension", argmin_err, 0.0, 1e-8);
  }
  return r;
}

// 4. E_{n+1}[b] = Σ_ij E_n[slice(b, i, j)].
inline VerificationReport suite_self_similarity(const SuiteOptions& opt) {
  VerificationReport r{"self-similarity", {}, opt.seed};
  detail::CaseRecorder rec(r.cases);
  Rng rng(opt.seed);
  const int levels = detail::pick(opt.levels, 4);
  const int samples = detail::pick(opt.samples, 100);
  for (int n = 0; n <= levels; ++n) {
    double err = 0.0;
    for (int s = 0; s < samples; ++s) {
      const auto ss = check_selfsimilarity(random_element(rng, n + 1));
      err = std::max(err, std::abs(ss.lhs - ss.rhs));
    }
    rec.check(detail::lvl(n) + " energy splits over first-factor slices", err, 0.0, 1e-10);
  }
  return r;
}

// 5. osc(λ^t a) ≤ t osc(a) and ‖a − λ^t a‖ ≤ t osc(a).
inline VerificationReport suite_oscillation(const SuiteOptions& opt) {
  VerificationReport r{"oscillation", {}, opt.seed};
  detail::CaseRecorder rec(r.cases);
  Rng rng(opt.seed);
  const int levels = detail::pick(opt.levels, 3);
  const int samples = detail::pick(opt.samples, 100);
  for (double t : {0.5, 0.6, 0.8}) {
    for (int n = 0; n <= levels; ++n) {
      double osc_excess = 0.0, dist_excess = 0.0;
      for (int s = 0; s < samples; ++s) {
        const auto a = random_element(rng, n);
        const auto ext = symmetric_extension(a, t);
        const double oa = osc(a);
        osc_excess = std::max(osc_excess, osc(ext) - t * oa);
        const double dist = op_norm(to_dense(ext) - kron(to_dense(a), identity_matrix(3)));
        dist_excess = std::max(dist_excess, dist - t * oa);
      }
      const std::string tag = "t=" + format_double(t) + " " + detail::lvl(n);
      rec.check(tag + " osc contraction excess", std::max(osc_excess, 0.0), 0.0, 1e-12);
      rec.check(tag + " distance to extension excess", std::max(dist_excess, 0.0), 0.0, 1e-10);
    }
  }
  return r;
}

// 6. ‖[F_n, π_n(a)]‖ = osc(ρ_n(a)).
inline VerificationReport suite_commutator(const SuiteOptions& opt) {
  VerificationReport r{"commutator", {}, opt.seed};
  detail::CaseRecorder rec(r.cases);
  Rng rng(opt.seed);
  const int levels = detail::pick(opt.levels, 3);
  const int samples = detail::pick(opt.samples, 50);
  for (int n = 0; n <= levels; ++n) {
    double err = 0.0;
    for (int s = 0; s < samples; ++s) {
      const auto a = random_element(rng, n + s % 2);
      err = std::max(err, std::abs(dense_commutator_norm(a, n) - commutator_norm(a, n)));
    }
    rec.check(detail::lvl(n) + " dense commutator norm vs oscillation", err, 0.0, 1e-8);
  }
  return r;
}

// 7. Lip-norm of affine extensions.
inline VerificationReport suite_lip_norm(const SuiteOptions& opt) {
  VerificationReport r{"lip-norm", {}, opt.seed};
  detail::CaseRecorder rec(r.cases);
  Rng rng(opt.seed);
  const int levels = detail::pick(opt.levels, 3);
  const int samples = detail::pick(opt.samples, 20);
  for (int n = 0; n <= levels; ++n) {
    double value_err = 0.0, approx_excess = 0.0;
    double not_stationary = 0.0;
    for (int s = 0; s < samples; ++s) {
      const auto a = random_element(rng, n);
      const auto chain = make_extension_chain(a, kAffineT, std::min(n + 3, 6));
      const auto lip = lip_norm(chain, chain.top());
      const double base = std::ldexp(osc(a), n);
      value_err = std::max(value_err, std::abs(lip.value - base) / std::max(1.0, base));
      if (!lip.stationary) not_stationary = 1.0;
      const auto approx = lip_approximation(chain, lip.value);
      approx_excess = std::max(approx_excess, -approx.worst_margin);
    }
    rec.check(detail::lvl(n) + " L(a) equals 2^n osc(a)", value_err, 0.0, 1e-10);
    rec.check(detail::lvl(n) + " supremum flagged stationary", not_stationary, 0.0, 0.0);
    rec.check(detail::lvl(n) + " approximation bound excess", std::max(approx_excess, 0.0), 0.0, 1e-10);
  }
  return r;
}

// 8. Growth exponent of the eigenvalue counting function of |D|.
inline VerificationReport suite_metric_dimension(const SuiteOptions& opt) {
  VerificationReport r{"metric-dimension", {}, opt.seed};
  detail::CaseRecorder rec(r.cases);
  const int levels = detail::pick(opt.levels, 20);
  rec.check("N(1)", static_cast<double>(eigenvalue_counting(1.0)), 6.0, 0.0);
  rec.check("N(2)", static_cast<double>(eigenvalue_counting(2.0)), 24.0, 0.0);
  rec.check("slope of log N(T) vs log T, T = 2^0..2^" + std::to_string(levels),
            dimension_fit(std::ldexp(1.0, levels)), metric_dimension(), 0.01);
  return r;
}

// 9. Trace residue at d = log 3 / log 2.
inline VerificationReport suite_connes_trace(const SuiteOptions& opt) {
  VerificationReport r{"connes-trace", {}, opt.seed};
  detail::CaseRecorder rec(r.cases);
  Rng rng(opt.seed);
  const int levels = detail::pick(opt.levels, 3);
  const int samples = detail::pick(opt.samples, 20);
  const double d = metric_dimension();
  for (int n = 0; n <= levels; ++n) {
    double analytic_err = 0.0, numeric_err = 0.0, factor_err = 0.0, tau_err = 0.0;
    for (int s = 0; s < samples; ++s) {
      const auto a = random_element(rng, n);
      const auto chain = make_extension_chain(a, kHarmonicT, n + 2);
      const auto profile = zeta_trace(chain, {}, chain.top());
      const Complex expected = std::pow(3.0, -n) * trace(a) / std::log(2.0);
      const Complex analytic = residue_analytic(*profile.tail, d);
      analytic_err = std::max(analytic_err, std::abs(analytic - expected) / std::max(1.0, std::abs(expected)));
      tau_err = std::max(tau_err, std::abs(analytic - 3.0 * trace_tau(a) / std::log(2.0)) /
                                      std::max(1.0, std::abs(expected)));
      const auto numeric = residue_numeric(profile, d);
      numeric_err = std::max(numeric_err, std::abs(numeric.value - expected) / std::abs(expected));
      const ComplexMatrix pi = dense_pi(a, n);
      factor_err = std::max(factor_err, std::abs(pi.trace() - 2.0 * to_dense(a).trace()));
    }
    rec.check(detail::lvl(n) + " analytic residue vs 3^-n tr(a)/log 2", analytic_err, 0.0, 1e-12);
    rec.check(detail::lvl(n) + " analytic residue vs 3 tau(a)/log 2", tau_err, 0.0, 1e-12);
    rec.check(detail::lvl(n) + " extrapolated residue, relative error", numeric_err, 0.0, 1e-3);
    rec.check(detail::lvl(n) + " Hilbert trace equals twice the matrix trace", factor_err, 0.0, 1e-10);
  }
  return r;
}

// 10. Energy residue at δ = 2 − log(5/3)/log 2.
inline VerificationReport suite_energy_residue(const SuiteOptions& opt) {
  VerificationReport r{"energy-residue", {}, opt.seed};
  detail::CaseRecorder rec(r.cases);
  Rng rng(opt.seed);
  const int levels = detail::pick(opt.levels, 3);
  const int samples = detail::pick(opt.samples, 20);
  const double delta = energy_dimension();
  rec.check("delta", delta, 1.263034, 1e-6);
  for (int n = 0; n <= levels; ++n) {
    double analytic_err = 0.0, numeric_err = 0.0, path_err = 0.0;
    for (int s = 0; s < samples; ++s) {
      const auto a = random_element(rng, n);
      const auto chain = make_extension_chain(a, kHarmonicT, std::max(n + 2, 3));
      const double e_inf = energy_limit(chain).value;
      const double expected = e_inf / std::log(2.0);
      const auto analytic = energy_residue(chain);
      analytic_err = std::max(analytic_err, std::abs(analytic.value - expected) / expected);
      const auto profile = energy_zeta(chain, {}, chain.top());
      const auto numeric = residue_numeric(profile, delta);
      numeric_err = std::max(numeric_err, std::abs(numeric.value - expected) / expected);
      for (int j = 0; j <= std::min(chain.top(), 3); ++j)
        path_err = std::max(path_err, std::abs(dense_commutator_hs_square(chain.at(j), j) - profile.weights[static_cast<std::size_t>(j)].real()));
    }
    rec.check(detail::lvl(n) + " analytic residue vs E_inf/log 2", analytic_err, 0.0, 1e-12);
    rec.check(detail::lvl(n) + " extrapolated residue, relative error", numeric_err, 0.0, 1e-3);
    rec.check(detail::lvl(n) + " energy weights, formula vs dense Hilbert space", path_err, 0.0, 1e-8);
  }
  return r;
}

// 11. Tracial states, and the product state ½(e11* + e33*) ⊗ e22* ⊗ ...
inline VerificationReport suite_traces(const SuiteOptions& opt) {
  VerificationReport r{"traces", {}, opt.seed};
  detail::CaseRecorder rec(r.cases);
  Rng rng(opt.seed);
  const int levels = detail::pick(opt.levels, 4);
  const int samples = detail::pick(opt.samples, 100);
  double tau_c = 0, chi_c = 0, taumj_c = 0, unital = 0, omega_err = 0, omega_dense_err = 0;
  Eigen::Matrix3cd w0 = Eigen::Matrix3cd::Zero();
  w0(0, 0) = w0(0, 2) = w0(2, 0) = w0(2, 2) = 0.5;
  const ProductState omega({w0});
  for (int s = 0; s < samples; ++s) {
    const int n = 1 + s % std::max(levels, 1);
    const auto a = random_element(rng, n);
    const auto b = random_element(rng, n);
    const auto ab = a * b;
    const auto ba = b * a;
    const auto one = identity_element(n);
    tau_c = std::max(tau_c, std::abs(trace_tau(ab) - trace_tau(ba)));
    unital = std::max(unital, std::abs(trace_tau(one) - 1.0));
    for (int j = 1; j <= 3; ++j) {
      chi_c = std::max(chi_c, std::abs(char_chi(ab, j) - char_chi(ba, j)));
      unital = std::max(unital, std::abs(char_chi(one, j) - 1.0));
      for (int m = 1; m <= n; ++m) {
        taumj_c = std::max(taumj_c, std::abs(trace_tau_mj(ab, m, j) - trace_tau_mj(ba, m, j)));
        unital = std::max(unital, std::abs(trace_tau_mj(one, m, j) - 1.0));
      }
    }
    const Complex target = 0.5 * (char_chi(a, 1) + char_chi(a, 3));
    omega_err = std::max(omega_err, std::abs(eval_product_state(a, omega) - target));
    omega_dense_err =
        std::max(omega_dense_err, std::abs(apply_product_functional(to_dense(a), omega.factors(n + 1)) - target));
  }
  rec.check("tau tracial", tau_c, 0.0, 1e-10);
  rec.check("chi_j tracial", chi_c, 0.0, 1e-10);
  rec.check("tau_mj tracial", taumj_c, 0.0, 1e-10);
  rec.check("all traces unital", unital, 0.0, 1e-10);
  rec.check("product state equals (chi_1 + chi_3)/2, blockwise", omega_err, 0.0, 1e-10);
  rec.check("product state equals (chi_1 + chi_3)/2, dense contraction", omega_dense_err, 0.0, 1e-10);
  return r;
}

// 12. ‖ρ_{n+1}(b) − ρ_n(b) ⊗ I‖² ≤ (3/5)^{n+1} E_∞[b] on harmonic chains.
inline VerificationReport suite_norm_energy(const SuiteOptions& opt) {
  VerificationReport r{"norm-energy", {}, opt.seed};
  detail::CaseRecorder rec(r.cases);
  Rng rng(opt.seed);
  const int levels = detail::pick(opt.levels, 5);
  const int samples = detail::pick(opt.samples, 20);
  std::vector<double> excess(static_cast<std::size_t>(levels + 1), 0.0);
  double global_excess = 0.0;
  int global_cases = 0;
  for (int s = 0; s < samples; ++s) {
    const int base = s % std::min(3, levels + 1);
    auto a = random_element(rng, base);
    if (s % 2 == 1)
      for (int j = 1; j <= 3; ++j) a.set_xi(j, 0.0);
    const auto chain = make_extension_chain(a, kHarmonicT, levels + 1);
    const double e_inf = energy_limit(chain).value;
    const auto bounds = check_norm_energy_bounds(chain, e_inf);
    for (int n = 0; n <= levels; ++n)
      excess[static_cast<std::size_t>(n)] =
          std::max(excess[static_cast<std::size_t>(n)],
                   bounds.lhs[static_cast<std::size_t>(n)] - bounds.rhs[static_cast<std::size_t>(n)]);
    if (bounds.global_checked) {
      ++global_cases;
      global_excess = std::max(global_excess, -bounds.global_margin);
    }
  }
  for (int n = 0; n <= levels; ++n)
    rec.check(detail::lvl(n) + " per-level bound excess", std::max(excess[static_cast<std::size_t>(n)], 0.0), 0.0,
              1e-10);
  if (global_cases > 0)
    rec.check("norm bound with accumulated constant, excess", std::max(global_excess, 0.0), 0.0, 1e-10);
  return r;
}

namespace detail {

// Dimension of the commutant of the diagonal subalgebra inside A_n, from the
// null space of X ↦ ([D, X])_D over a basis of diagonal elements D.
inline int diagonal_commutant_dimension(int n) {
  std::vector<std::pair<int, int>> slots;  // (k, j), k = -1 for ξ_j
  Index dim = 0;
  for (int j = 1; j <= 3; ++j) {
    slots.emplace_back(-1, j);
    dim += 1;
  }
  for (int k = 0; k < n; ++k)
    for (int j = 1; j <= 3; ++j) {
      slots.emplace_back(k, j);
      dim += pow3(k) * pow3(k);
    }
  auto unpack = [&](Index col) {
    GasketElement e(n);
    Index off = 0;
    for (auto [k, j] : slots) {
      const Index size = k < 0 ? 1 : pow3(k) * pow3(k);
      if (col < off + size) {
        if (k < 0) {
          e.set_xi(j, 1.0);
        } else {
          ComplexMatrix m = ComplexMatrix::Zero(pow3(k), pow3(k));
          m((col - off) % pow3(k), (col - off) / pow3(k)) = 1.0;
          e.set_block(k, j, m);
        }
        return e;
      }
      off += size;
    }
    return e;
  };
  auto pack = [&](const GasketElement& e) {
    ComplexVector v(dim);
    Index off = 0;
    for (auto [k, j] : slots) {
      if (k < 0) {
        v(off++) = e.xi(j);
      } else {
        const auto& m = e.block(k, j);
        for (Index c = 0; c < m.cols(); ++c)
          for (Index r = 0; r < m.rows(); ++r) v(off++) = m(r, c);
      }
    }
    return v;
  };
  std::vector<GasketElement> diag;
  for (const auto& v : enumerate_vertices(n)) diag.push_back(to_element(indicator(v)));
  ComplexMatrix m(static_cast<Index>(diag.size()) * dim, dim);
  for (Index c = 0; c < dim; ++c) {
    const auto x = unpack(c);
    for (std::size_t i = 0; i < diag.size(); ++i)
      m.block(static_cast<Index>(i) * dim, c, dim, 1) = pack(diag[i] * x - x * diag[i]);
  }
  Eigen::FullPivLU<ComplexMatrix> lu(m);
  return static_cast<int>(dim - lu.rank());
}

}  // namespace detail

// 13. Classical functions on V_n against the diagonal subalgebra.
inline VerificationReport suite_classical_bridge(const SuiteOptions& opt) {
  VerificationReport r{"classical-bridge", {}, opt.seed};
  detail::CaseRecorder rec(r.cases);
  Rng rng(opt.seed);
  const int levels = detail::pick(opt.levels, 4);
  const int samples = detail::pick(opt.samples, 20);
  for (int n = 0; n <= 8; ++n)
    rec.check(detail::lvl(n) + " vertex count", static_cast<double>(enumerate_vertices(n).size()),
              static_cast<double>(vertex_count(n)), 0.0);
  double point_err = 0.0;
  for (int n = 0; n <= 6; ++n)
    for (const auto& v : enumerate_vertices(n)) {
      const auto addrs = v.addresses();
      const Point2 p = point_of_address(addrs.front());
      const Point2 q = point_of_address(addrs.back());
      point_err = std::max(point_err, std::hypot(p.x - q.x, p.y - q.y));
    }
  rec.check("double addresses resolve to one point, n <= 6", point_err, 0.0, 1e-14);
  for (int n = 0; n <= levels; ++n) {
    double step = 0, en = 0, res = 0, comm = 0, oscd = 0;
    for (int s = 0; s < samples; ++s) {
      const auto e = random_real_diagonal_element(rng, n);
      const auto f = from_element(e);
      step = std::max(step, max_abs_diff(to_element(classical_harmonic_step(f)), harmonic_extension(e)));
      const double ce = classical_energy(f);
      en = std::max(en, std::abs(ce - dirichlet_energy(e)));
      if (n >= 1) res = std::max(res, max_abs_diff(to_element(classical_restrict(f)), restrict(e)));
      const auto g = random_real_diagonal_element(rng, n);
      comm = std::max(comm, max_abs_diff(e * g, g * e));
      oscd = std::max(oscd, std::abs(classical_osc(f) - osc(e)));
    }
    rec.check(detail::lvl(n) + " harmonic step vs symmetric extension(3/5)", step, 0.0, 1e-12);
    rec.check(detail::lvl(n) + " graph energy vs Dirichlet energy", en, 0.0, 1e-12);
    if (n >= 1) rec.check(detail::lvl(n) + " classical restriction vs restrict", res, 0.0, 1e-12);
    rec.check(detail::lvl(n) + " diagonal elements commute", comm, 0.0, 1e-12);
    rec.check(detail::lvl(n) + " osc equals max edge jump", oscd, 0.0, 1e-12);
  }
  for (int n = 0; n <= 2; ++n)
    rec.check(detail::lvl(n) + " commutant of the diagonal subalgebra has dimension |V_n|",
              detail::diagonal_commutant_dimension(n), static_cast<double>(vertex_count(n)), 0.0);
  return r;
}

using SuiteFn = VerificationReport (*)(const SuiteOptions&);

inline const std::vector<std::pair<std::string, SuiteFn>>& suites() {
  static const std::vector<std::pair<std::string, SuiteFn>> all{
      {"dense-oracle", suite_dense_oracle},
      {"eigenform", suite_eigenform},
      {"fiber-minimization", suite_fiber_minimization},
      {"self-similarity", suite_self_similarity},
      {"oscillation", suite_oscillation},
      {"commutator", suite_commutator},
      {"lip-norm", suite_lip_norm},
      {"metric-dimension", suite_metric_dimension},
      {"connes-trace", suite_connes_trace},
      {"energy-residue", suite_energy_residue},
      {"traces", suite_traces},
      {"norm-energy", suite_norm_energy},
      {"classical-bridge", suite_classical_bridge},
  };
  return all;
}

inline VerificationReport run_suite(const std::string& name, const SuiteOptions& opt) {
  for (const auto& [n, fn] : suites())
    if (n == name) {
      const auto start = std::chrono::steady_clock::now();
      VerificationReport r = fn(opt);
      r.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      return r;
    }
  throw DomainError("unknown suite '" + name + "'");
}

}  // namespace ncgasket
