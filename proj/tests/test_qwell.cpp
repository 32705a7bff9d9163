#include "casimir_qse/qwell.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace casimir_qse;

TEST(Qwell, InfiniteWellLevels) {
  const auto s = solve_spectrum(InfiniteWell{}, 1.0, 10);
  ASSERT_EQ(s.size(), 10u);
  for (std::size_t n = 1; n <= 10; ++n) EXPECT_NEAR(s.level(n).k, n * units::pi, 1e-13);
  EXPECT_THROW(s.level(0), std::out_of_range);
  EXPECT_THROW(s.level(11), std::out_of_range);
}

TEST(Qwell, DeepFiniteWellApproachesHardWall) {
  const double D = 1.5;
  double previous = 1.0;
  for (double depth : {1e2, 1e4, 1e6}) {
    const auto s = solve_spectrum(FiniteWell{depth}, D);
    const double dev = std::abs(s.level(1).k - units::pi / D) / (units::pi / D);
    EXPECT_LT(dev, previous);
    previous = dev;
  }
  EXPECT_LT(previous, 1e-3);
}

TEST(Qwell, CesiumRootsMatchDenseScan) {
  const double depth = bulk_well_depth(presets::cesium());
  const auto s = solve_spectrum(FiniteWell{depth}, 2.0);
  const auto ref = oracle::finite_well_roots(depth, 2.0, 1000000);
  ASSERT_EQ(s.size(), ref.size());
  for (std::size_t i = 0; i < ref.size(); ++i) EXPECT_NEAR(s.level(i + 1).k, ref[i], 1e-9);
}

TEST(Qwell, RandomRootsMatchScanOracle) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> logD(std::log(0.2), std::log(20.0));
  std::uniform_real_distribution<double> logV(std::log(0.5), std::log(25.0));
  for (int i = 0; i < 100; ++i) {
    const double D = std::exp(logD(rng)), V = std::exp(logV(rng));
    const auto s = solve_spectrum(FiniteWell{V}, D);
    const auto ref = oracle::finite_well_roots(V, D);
    ASSERT_EQ(s.size(), ref.size()) << "D=" << D << " V0=" << V;
    for (std::size_t n = 1; n <= s.size(); ++n) {
      EXPECT_LT(std::abs(s.level(n).k - ref[n - 1]), 1e-12 * s.k0());
      EXPECT_LT(std::abs(s.quantization_residual(n)), 1e-12 * s.k0());
    }
  }
}

TEST(Qwell, HardWallEnvelopeVanishesAtWalls) {
  const auto s = solve_spectrum(InfiniteWell{}, 2.0, 12);
  for (std::size_t n = 1; n <= 12; ++n) {
    EXPECT_NEAR(s.envelope(n, 1.0), 0.0, 1e-12);
    EXPECT_NEAR(s.envelope(n, -1.0), 0.0, 1e-12);
    EXPECT_EQ(s.envelope(n, 1.5), 0.0);
  }
}

TEST(Qwell, FiniteWellEnvelopeDecaysWithKappa) {
  const auto s = solve_spectrum(FiniteWell{5.0}, 1.0);
  const double kappa = s.level(1).kappa;
  const double ratio = s.envelope(1, 2.0) / s.envelope(1, 1.0);
  EXPECT_NEAR(ratio, std::exp(-kappa), 1e-12);
  EXPECT_LT(std::abs(s.envelope(1, 40.0)), 1e-20);
  EXPECT_NEAR(s.envelope(1, -3.0), s.envelope(1, 3.0), 1e-15);
}

TEST(Qwell, SpillOutPositiveDecreasingInNAndDepth) {
  const auto s = solve_spectrum(FiniteWell{bulk_well_depth(presets::aluminium())}, 1.0);
  ASSERT_GE(s.size(), 3u);
  for (std::size_t n = 1; n <= s.size(); ++n) EXPECT_GT(s.spill_out(n), 0.0);
  // Compare levels well below the rim, where the exponential tail dominates.
  EXPECT_LT(s.spill_out(1), s.spill_out(2));
  const auto deeper = solve_spectrum(FiniteWell{2.0 * s.depth()}, 1.0);
  EXPECT_LT(deeper.spill_out(1), s.spill_out(1));
  // Cross-check the closed form against quadrature of |phi|^2 outside the slab.
  boost::math::quadrature::exp_sinh<double> tail;
  const double out = 2.0 * tail.integrate([&](double t) {
    const double phi = s.envelope(1, 0.5 + t);
    return phi * phi;
  });
  EXPECT_NEAR(out, s.spill_out(1), 1e-10);
}

TEST(Qwell, Orthonormality) {
  for (double D : {0.7, 2.0, 5.0}) {
    const auto s = solve_spectrum(FiniteWell{bulk_well_depth(presets::silver())}, D);
    for (std::size_t n = 1; n <= s.size(); ++n)
      for (std::size_t m = n; m <= s.size(); ++m)
        EXPECT_NEAR(oracle::overlap(s, n, m), n == m ? 1.0 : 0.0, 1e-8) << D << " " << n << m;
  }
  const auto box = solve_spectrum(ParticleInBox{1.3}, 1.0, 8);
  for (std::size_t n = 1; n <= 8; ++n)
    for (std::size_t m = n; m <= 8; ++m)
      EXPECT_NEAR(oracle::overlap(box, n, m), n == m ? 1.0 : 0.0, 1e-8);
}

TEST(Qwell, MomentumSelectionRules) {
  const auto s = solve_spectrum(InfiniteWell{}, 1.0, 10);
  for (std::size_t n = 1; n <= 10; ++n) {
    EXPECT_EQ(s.momentum_matrix_element(n, n), 0.0);
    for (std::size_t m = 1; m <= 10; ++m) {
      if (m != n && (n + m) % 2 == 0) EXPECT_EQ(s.momentum_matrix_element(n, m), 0.0);
      EXPECT_NEAR(s.momentum_matrix_element(n, m), -s.momentum_matrix_element(m, n), 1e-12);
    }
  }
}

TEST(Qwell, InfiniteWellMomentumClosedForm) {
  const double D = 1.0;
  const auto s = solve_spectrum(InfiniteWell{}, D, 4);
  // |<1|d/dz|2>| = 8 / (3 D) for a box of width D.
  EXPECT_NEAR(std::abs(s.momentum_matrix_element(1, 2)), 8.0 / (3.0 * D), 1e-13);
  const double quad = oracle::momentum_element(s, 1, 2);
  EXPECT_NEAR(quad / s.momentum_matrix_element(1, 2), 1.0, 1e-10);
}

TEST(Qwell, FiniteWellMomentumMatchesQuadrature) {
  for (double D : {0.8, 3.0}) {
    const auto s = solve_spectrum(FiniteWell{bulk_well_depth(presets::cesium())}, D);
    for (std::size_t n = 1; n <= s.size(); ++n)
      for (std::size_t m = 1; m <= s.size(); ++m) {
        if ((n + m) % 2 == 0) continue;
        const double closed = s.momentum_matrix_element(n, m);
        EXPECT_NEAR(oracle::momentum_element(s, n, m), closed, 1e-9 * std::abs(closed) + 1e-12);
      }
  }
}

TEST(Qwell, ThomasReicheKuhnSum) {
  const auto hard = solve_spectrum(InfiniteWell{}, 1.0, 64);
  EXPECT_NEAR(hard.trk_sum(1), 1.0, 1e-4);
  // The bound spectrum of a finite well misses continuum strength.
  const auto finite = solve_spectrum(FiniteWell{3.0}, 1.0);
  EXPECT_LE(finite.trk_sum(1), 1.0 + 1e-12);
  EXPECT_GT(finite.trk_sum(1), 0.5);
}

TEST(Qwell, InvalidInput) {
  EXPECT_THROW(solve_spectrum(InfiniteWell{}, 0.0), std::invalid_argument);
  EXPECT_THROW(solve_spectrum(FiniteWell{-1.0}, 1.0), std::invalid_argument);
  EXPECT_THROW(solve_spectrum(ParticleInBox{0.5}, 1.0), std::invalid_argument);
}

TEST(Qwell, ShallowNarrowWellKeepsGroundState) {
  const auto s = solve_spectrum(FiniteWell{0.01}, 0.05);
  EXPECT_EQ(s.size(), 1u);
  EXPECT_LT(s.level(1).energy, 0.0);
}
