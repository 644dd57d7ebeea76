#include <gtest/gtest.h>

#include "oracle.hpp"

using namespace ncgasket;

TEST(Energy, AlphaAtLevelZero) {
  // |1−0|² on the two pairs touching vertex 1, counted in both orders.
  const auto r = energy(to_v0form(alpha(0, 1)));
  EXPECT_DOUBLE_EQ(r.energy, 4.0);
  EXPECT_DOUBLE_EQ(r.renormalized, 4.0);
  EXPECT_DOUBLE_EQ(dirichlet_energy(identity_element(3)), 0.0);
}

TEST(Energy, MatchesDenseOracle) {
  Rng rng(21);
  for (int n = 0; n <= 4; ++n)
    for (int s = 0; s < 3; ++s) {
      auto e = random_element(rng, n);
      const double want = oracle::dense_energy(oracle::dense_of(e));
      EXPECT_NEAR(dirichlet_energy(e), want, 1e-12 * std::max(1.0, want));
    }
}

TEST(Energy, PerPairSumsToHalf) {
  Rng rng(22);
  const auto r = energy(to_v0form(random_element(rng, 3)));
  EXPECT_NEAR(2.0 * (r.per_pair[0] + r.per_pair[1] + r.per_pair[2]), r.energy, 1e-13 * r.energy);
  EXPECT_NEAR(r.renormalized, std::pow(5.0 / 3.0, 3) * r.energy, 1e-12 * r.renormalized);
}

TEST(Energy, HarmonicStepScalesByThreeFifths) {
  Rng rng(23);
  for (int n = 0; n <= 4; ++n) {
    auto b = random_element(rng, n);
    EXPECT_NEAR(dirichlet_energy(harmonic_extension(b)) / dirichlet_energy(b), 0.6, 1e-12) << n;
  }
  EXPECT_NEAR(dirichlet_energy(harmonic_extension(alpha(0, 1))), 12.0 / 5.0, 1e-15);
}

TEST(Energy, OtherExtensionsCostMore) {
  Rng rng(24);
  for (double t : {0.5, 0.7, 0.9}) {
    auto b = random_hermitian_element(rng, 2);
    EXPECT_GT(dirichlet_energy(symmetric_extension(b, t)), 0.6 * dirichlet_energy(b));
  }
}

TEST(Energy, SelfSimilarity) {
  Rng rng(25);
  for (int n = 1; n <= 4; ++n) {
    auto b = random_element(rng, n);
    const auto s = check_selfsimilarity(b);
    EXPECT_NEAR(s.lhs, s.rhs, 1e-12 * s.lhs) << n;
    EXPECT_NEAR(s.lhs, oracle::dense_energy(oracle::dense_of(b)), 1e-12 * s.lhs);
  }
  EXPECT_THROW(check_selfsimilarity(alpha(0, 1)), DomainError);
}

TEST(Energy, SliceMatchesFirstFactorBlock) {
  Rng rng(26);
  auto b = random_element(rng, 2);
  const ComplexMatrix d = oracle::dense_of(b);
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) {
      const V0Form s = slice(b, i, j);
      const ComplexMatrix want = first_factor_block(d, i, j);
      EXPECT_LT(oracle::max_abs(assemble(s) - want), 1e-15);
    }
}

TEST(Fiber, MinimumOnAlpha) {
  const auto m = minimize_over_fiber(alpha(0, 1));
  EXPECT_NEAR(m.min_energy, 12.0 / 5.0, 1e-12);
  EXPECT_LT(m.harmonic_deviation, 1e-12);
  EXPECT_FALSE(m.rank_deficient);
}

TEST(Fiber, MinimizerIsHarmonicExtension) {
  Rng rng(27);
  for (int n = 0; n <= 1; ++n)
    for (int s = 0; s < 3; ++s) {
      auto b = random_hermitian_element(rng, n);
      const auto m = minimize_over_fiber(b);
      EXPECT_NEAR(m.min_energy, 0.6 * dirichlet_energy(b), 1e-10);
      EXPECT_LT(max_abs_diff(m.minimizer, harmonic_extension(b)), 1e-8);
      EXPECT_EQ(max_abs_diff(restrict(m.minimizer), b), 0.0);
    }
}

TEST(Fiber, ConstantElementHasZeroMinimum) {
  const auto m = detail::solve_fiber_quadratic(identity_element(0));
  EXPECT_NEAR(m.min_energy, 0.0, 1e-14);
  EXPECT_LT(m.harmonic_deviation, 1e-10);
}

TEST(EnergySequence, HarmonicChainIsStationary) {
  Rng rng(28);
  auto chain = make_extension_chain(random_element(rng, 2), kHarmonicT, 5);
  const auto s = renormalized_energy_sequence(chain);
  EXPECT_TRUE(s.monotone);
  EXPECT_TRUE(s.stationary);
  for (int m = 3; m <= 5; ++m)
    EXPECT_NEAR(s.values[static_cast<std::size_t>(m)], s.values[2], 1e-12 * s.values[2]);
  for (int m = 0; m < 2; ++m) EXPECT_LE(s.values[static_cast<std::size_t>(m)], s.values[2] * (1 + 1e-12));
}

TEST(EnergySequence, AffineChainGrowsAndIsNotStationary) {
  Rng rng(29);
  auto chain = make_extension_chain(random_element(rng, 1), kAffineT, 4);
  const auto s = renormalized_energy_sequence(chain);
  EXPECT_FALSE(s.stationary);
  EXPECT_GT(s.values.back(), s.values[1]);
  EXPECT_DOUBLE_EQ(energy_limit(chain).value, s.values.back());
}

TEST(NormEnergy, ConstantValue) {
  const double r = std::sqrt(0.6);
  EXPECT_NEAR(norm_energy_constant(), r * r / ((1 - r) * (1 - r)), 1e-12);
  EXPECT_NEAR(norm_energy_constant(), 11.809475019311, 1e-11);
}

TEST(NormEnergy, PerLevelBoundHolds) {
  Rng rng(30);
  for (int s = 0; s < 10; ++s) {
    auto chain = make_extension_chain(random_element(rng, rng.uniform_int(0, 2)), kHarmonicT, 5);
    const auto b = check_norm_energy_bounds(chain, energy_limit(chain).value);
    EXPECT_GE(b.worst_margin, -1e-10);
  }
}

TEST(NormEnergy, GlobalBoundWhenLevelZeroVanishes) {
  Rng rng(31);
  auto a = random_element(rng, 2);
  for (int j = 1; j <= 3; ++j) a.set_xi(j, 0.0);
  auto chain = make_extension_chain(a, kHarmonicT, 4);
  const auto b = check_norm_energy_bounds(chain, energy_limit(chain).value);
  ASSERT_TRUE(b.global_checked);
  EXPECT_GE(b.global_margin, 0.0);
}

TEST(Sobolev, GramRecursionMatchesExtension) {
  Rng rng(32);
  for (double t : {0.5, 0.6, 0.8})
    for (int n = 0; n <= 2; ++n) {
      auto a = random_element(rng, n);
      const Eigen::Matrix3cd want = normalized_boundary_gram(to_v0form(symmetric_extension(a, t)));
      const Eigen::Matrix3cd got = extend_gram(normalized_boundary_gram(to_v0form(a)), t);
      EXPECT_LT((want - got).cwiseAbs().maxCoeff(), 1e-13);
    }
}

TEST(Sobolev, GramTraceIsTauOfSquare) {
  Rng rng(33);
  auto a = random_element(rng, 3);
  EXPECT_NEAR(normalized_boundary_gram(to_v0form(a)).trace().real(), trace_tau(a.adjoint() * a).real(), 1e-12);
}

TEST(Sobolev, LimitIsApproachedByFiniteExtensions) {
  Rng rng(34);
  auto a = random_element(rng, 1);
  const double limit = extended_tau_square(a, kHarmonicT);
  auto b = extend_to(a, kHarmonicT, 5);
  const double finite = trace_tau(b.adjoint() * b).real();
  EXPECT_NEAR(finite, limit, 0.02 * limit);
}

TEST(Sobolev, SampleIsDeterministicAndFinite) {
  const double x = sobolev_sample(20, 2, 42);
  EXPECT_EQ(x, sobolev_sample(20, 2, 42));
  EXPECT_TRUE(std::isfinite(x));
  EXPECT_GT(x, 0.0);
  EXPECT_THROW(sobolev_ratio(zero_element(1)), DomainError);
}
