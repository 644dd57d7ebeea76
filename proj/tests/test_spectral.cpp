#include <gtest/gtest.h>

#include "oracle.hpp"

using namespace ncgasket;

TEST(Spectral, EdgeSlotsAndReversal) {
  for (int s = 0; s < 6; ++s) {
    const auto [k, l] = kEdgePairs[static_cast<std::size_t>(s)];
    EXPECT_EQ(edge_slot(k, l), s);
    EXPECT_EQ(reversed_slot(s), edge_slot(l, k));
    EXPECT_EQ(reversed_slot(reversed_slot(s)), s);
  }
  EXPECT_THROW(edge_slot(2, 2), DomainError);
  EXPECT_EQ(hilbert_dim(3), 162);
}

TEST(Spectral, FIsSelfAdjointUnitary) {
  const ComplexMatrix f = dense_F(2);
  EXPECT_EQ(oracle::max_abs(f * f - identity_matrix(f.rows())), 0.0);
  EXPECT_EQ(oracle::max_abs(f - f.adjoint()), 0.0);
}

TEST(Spectral, OperatorsMatchDenseMatrices) {
  Rng rng(41);
  for (int n = 0; n <= 2; ++n) {
    auto a = random_element(rng, n + 1);
    EdgeStateVector v(n);
    for (Index i = 0; i < v.amplitudes.size(); ++i) v.amplitudes(i) = rng.complex();
    EXPECT_LT((apply_pi(a, v).amplitudes - dense_pi(a, n) * v.amplitudes).cwiseAbs().maxCoeff(), 1e-13);
    EXPECT_LT((apply_F(v).amplitudes - dense_F(n) * v.amplitudes).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(Spectral, PiIsARepresentation) {
  Rng rng(42);
  for (int n = 0; n <= 2; ++n) {
    auto a = random_element(rng, n), b = random_element(rng, n);
    EXPECT_LT(oracle::max_abs(dense_pi(a * b, n) - dense_pi(a, n) * dense_pi(b, n)), 1e-12);
    EXPECT_LT(oracle::max_abs(dense_pi(a.adjoint(), n) - dense_pi(a, n).adjoint()), 1e-15);
  }
}

TEST(Spectral, CommutatorNormIsOscillation) {
  Rng rng(43);
  for (int n = 0; n <= 3; ++n)
    for (int s = 0; s < 3; ++s) {
      auto a = random_element(rng, n);
      EXPECT_NEAR(commutator_norm(a, n), dense_commutator_norm(a, n), 1e-10);
    }
  EXPECT_NEAR(commutator_norm(alpha(0, 1), 0), 1.0, 1e-15);
}

TEST(Spectral, HilbertSchmidtCommutatorIsScaledEnergy) {
  Rng rng(44);
  for (int n = 0; n <= 3; ++n) {
    auto a = random_element(rng, n);
    const double dense = dense_commutator_hs_square(a, n);
    EXPECT_NEAR(commutator_hs_square(a, n), dense, 1e-10 * std::max(1.0, dense));
  }
}

TEST(Spectral, HilbertTraceIsTwiceMatrixTrace) {
  Rng rng(45);
  for (int n = 0; n <= 3; ++n) {
    auto a = random_element(rng, n);
    EXPECT_LT(std::abs(hilbert_trace_pi(a, n) - dense_pi(a, n).trace()), 1e-12);
    EXPECT_LT(std::abs(hilbert_trace_pi(a, n) - 2.0 * trace(a)), 1e-12);
  }
}

TEST(LipNorm, AffineChainIsStationaryAtBase) {
  Rng rng(46);
  for (int n = 0; n <= 2; ++n) {
    auto a = random_element(rng, n);
    auto chain = make_extension_chain(a, kAffineT, n + 3);
    const auto l = lip_norm(chain, chain.top());
    EXPECT_TRUE(l.stationary);
    EXPECT_NEAR(l.value, std::ldexp(osc(a), n), 1e-10);
    for (int k = n; k <= chain.top(); ++k) EXPECT_LE(std::ldexp(osc(chain.at(k)), k), l.value + 1e-10);
    EXPECT_GE(lip_approximation(chain, l.value).worst_margin, -1e-10);
  }
}

TEST(LipNorm, HarmonicChainIsNotFlaggedStationary) {
  auto chain = make_extension_chain(alpha(0, 1), kHarmonicT, 3);
  const auto l = lip_norm(chain, 3);
  EXPECT_FALSE(l.stationary);
  // 2^k (3/5)^k grows
  EXPECT_EQ(l.argmax_level, 3);
  EXPECT_NEAR(l.value, 8.0 * 0.216, 1e-12);
}

TEST(MetricDimension, CountingFunction) {
  EXPECT_EQ(eigenvalue_counting(1.0), 6u);
  EXPECT_EQ(eigenvalue_counting(1.9), 6u);
  EXPECT_EQ(eigenvalue_counting(2.0), 24u);
  EXPECT_EQ(eigenvalue_counting(4.0), 78u);
  for (int m = 0; m <= 38; ++m) {
    std::uint64_t p = 1;
    for (int i = 0; i <= m; ++i) p *= 3;
    EXPECT_EQ(eigenvalue_counting(std::ldexp(1.0, m)), 3 * (p - 1)) << m;
  }
  EXPECT_THROW(eigenvalue_counting(std::ldexp(1.0, 41)), DomainError);
  EXPECT_THROW(eigenvalue_counting(0.5), DomainError);
}

namespace {

// slope of log(3(3^{m+1} − 1)) against m log 2
double closed_form_slope(int mmax) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int count = mmax + 1;
  for (int m = 0; m <= mmax; ++m) {
    const double x = m * std::log(2.0);
    const double y = std::log(3.0) + (m + 1) * std::log(3.0) + std::log1p(-std::pow(3.0, -(m + 1)));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (count * sxy - sx * sy) / (count * sxx - sx * sx);
}

}  // namespace

TEST(MetricDimension, SlopeMatchesClosedForm) {
  EXPECT_NEAR(dimension_fit(std::ldexp(1.0, 20)), closed_form_slope(20), 1e-12);
  EXPECT_NEAR(dimension_fit(std::ldexp(1.0, 20)), 1.5953378864161247, 1e-12);
}

TEST(MetricDimension, SlopeConvergesSlowly) {
  const double d = metric_dimension();
  const double e20 = dimension_fit(std::ldexp(1.0, 20)) - d;
  const double e40 = dimension_fit(std::ldexp(1.0, 40)) - d;
  const double e60 = dimension_fit(std::ldexp(1.0, 60)) - d;
  EXPECT_GT(e20, e40);
  EXPECT_GT(e40, e60);
  EXPECT_GT(e60, 0.0);
  EXPECT_NEAR(e40, closed_form_slope(40) - d, 1e-12);
  EXPECT_LT(e40, 0.003);
}

TEST(Zeta, Constants) {
  EXPECT_NEAR(metric_dimension(), 1.5849625007, 1e-10);
  EXPECT_NEAR(energy_dimension(), 1.263034405833794, 1e-12);
}

TEST(Zeta, PartialSumAndTail) {
  std::vector<Complex> w{1.0, 3.0, 9.0};
  EXPECT_NEAR(partial_sum(w, 2.0).real(), 1 + 3.0 / 4 + 9.0 / 16, 1e-15);
  // full geometric series Σ 3^j 2^{-2j} = 4
  GeometricTail t{3.0, 3, 27.0};
  ZetaProfile p = make_profile(w, {2.0}, t, metric_dimension());
  EXPECT_NEAR(p.tail_corrected[0].real(), 4.0, 1e-14);
}

TEST(Zeta, BelowAbscissaWithoutTailThrows) {
  EXPECT_THROW(make_profile({1.0}, {1.0}, std::nullopt, metric_dimension()), DomainError);
  EXPECT_NO_THROW(make_profile({1.0}, {2.0}, std::nullopt, metric_dimension()));
}

TEST(Zeta, TraceResidueOfAlpha) {
  auto chain = make_extension_chain(alpha(0, 1), kHarmonicT, 6);
  const auto p = zeta_trace(chain, {}, 6);
  ASSERT_TRUE(p.tail.has_value());
  const auto r = residue_estimate(p, metric_dimension());
  EXPECT_TRUE(r.analytic);
  EXPECT_NEAR(r.value.real(), 1.0 / std::log(2.0), 1e-12);
  EXPECT_NEAR(r.value.real(), 1.4426950408889634, 1e-12);
}

TEST(Zeta, TraceResidueClosedFormAndNumeric) {
  Rng rng(47);
  for (int n = 0; n <= 3; ++n) {
    auto a = random_element(rng, n);
    auto chain = make_extension_chain(a, kHarmonicT, std::max(n, 5));
    const auto p = zeta_trace(chain, {}, chain.top());
    const Complex want = std::pow(3.0, -n) * trace(a) / std::log(2.0);
    const auto exact = residue_estimate(p, metric_dimension());
    EXPECT_LT(std::abs(exact.value - want), 1e-12 * std::max(1.0, std::abs(want)));
    const auto num = residue_numeric(p, metric_dimension());
    EXPECT_LT(std::abs(num.value - want), 1e-3 * std::abs(want));
  }
}

TEST(Zeta, TailIsCertifiedFromWeightsAlone) {
  auto chain = make_extension_chain(identity_element(1), kAffineT, 7);
  auto p = zeta_trace(chain, {}, 7);
  p.tail.reset();
  const auto tail = certify_tail(p, metric_dimension());
  ASSERT_TRUE(tail.has_value());
  EXPECT_NEAR(tail->ratio, 3.0, 1e-12);
  const auto r = residue_numeric(p, metric_dimension());
  EXPECT_NEAR(r.value.real(), 3.0 / std::log(2.0), 1e-3 * 3.0 / std::log(2.0));
}

TEST(Zeta, UncertifiedTailIsRejected) {
  ZetaProfile p;
  p.weights = {1.0, 5.0, 2.0, 7.0, 1.0, 4.0};
  p.cutoff = 5;
  EXPECT_FALSE(certify_tail(p, metric_dimension()).has_value());
  EXPECT_THROW(residue_numeric(p, metric_dimension()), DomainError);
}

TEST(Zeta, EnergyResidueIsLimitOverLog2) {
  Rng rng(48);
  for (int n = 0; n <= 3; ++n) {
    auto chain = make_extension_chain(random_element(rng, n), kHarmonicT, std::max(n, 5));
    const double e_inf = energy_limit(chain).value;
    const auto r = energy_residue(chain);
    EXPECT_NEAR(r.value.real(), e_inf / std::log(2.0), 1e-10 * e_inf);
    const auto p = energy_zeta(chain, {}, chain.top());
    const auto num = residue_numeric(p, energy_dimension());
    EXPECT_NEAR(num.value.real(), e_inf / std::log(2.0), 1e-3 * e_inf / std::log(2.0));
  }
}

TEST(Zeta, EnergyWeightsMatchDensePath) {
  Rng rng(49);
  auto chain = make_extension_chain(random_element(rng, 1), kHarmonicT, 3);
  const auto w = energy_weights(chain, 3);
  for (int j = 0; j <= 3; ++j)
    EXPECT_NEAR(w[static_cast<std::size_t>(j)].real(), dense_commutator_hs_square(chain.at(3), j), 1e-8);
}

TEST(Zeta, EnergyResidueNeedsHarmonicChain) {
  auto chain = make_extension_chain(alpha(1, 2), kAffineT, 4);
  EXPECT_THROW(energy_residue(chain), DomainError);
}
