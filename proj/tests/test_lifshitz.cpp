#include "casimir_qse/lifshitz.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <chrono>
#include <random>

using namespace casimir_qse;

TEST(Lifshitz, IdealMirrorLimit) {
  const double ell = 100.0;
  const double omega_p = 5000.0 * units::c / ell;
  const auto start = std::chrono::steady_clock::now();
  const auto r = force(plasma_slab(omega_p, 0.0, 10.0 * ell), ell);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_NEAR(r.pressure / ideal_mirror_pressure(ell), 1.0, 5e-3);
  EXPECT_LT(seconds, 5.0);
}

TEST(Lifshitz, NoReflectionNoForce) {
  EXPECT_EQ(force(vacuum_slab(3.0), 2.0).pressure, 0.0);
}

TEST(Lifshitz, PlasmaSlabsAgreeWithIndependentQuadrature) {
  const double wp = derive_bulk(presets::silver()).Omega_P;
  for (double ell : {1.0, 10.0, 100.0})
    for (double D : {1.0, 20.0})
      for (double scale : {0.3, 1.0}) {
        const double ref = oracle::plasma_pressure(scale * wp, 0.0, D, ell);
        const double got = force(plasma_slab(scale * wp, 0.0, D), ell, {1e-8}).pressure;
        EXPECT_NEAR(got / ref, 1.0, 1e-6) << ell << " " << D << " " << scale;
      }
}

TEST(Lifshitz, DrudeSlabAgreesWithIndependentQuadrature) {
  const double wp = derive_bulk(presets::cesium()).Omega_P;
  const double ref = oracle::plasma_pressure(wp, 1e14, 2.0, 5.0);
  EXPECT_NEAR(force(plasma_slab(wp, 1e14, 2.0), 5.0, {1e-8}).pressure / ref, 1.0, 1e-6);
}

TEST(Lifshitz, QFactorsMatchTransferMatrix) {
  const auto tensor = std::make_shared<const DielectricTensor>(
      make_film_state(presets::silver(), ModelKind::FWM, 2.0), derive_bulk(presets::silver()),
      OmegaScaling::SquareRoot, 1e14);
  const auto slab = quantized_slab(tensor);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> lk(std::log(1e-3), std::log(30.0)), lx(std::log(1e12), std::log(1e17));
  for (int i = 0; i < 200; ++i) {
    const double k = std::exp(lk(rng)), xi = std::exp(lx(rng)), ell = 3.0;
    const auto got = q_factors(slab, k, xi, ell);
    const double exx = tensor->eps_xx(xi), ezz = tensor->eps_zz(xi);
    const double w2 = xi * xi / (units::c * units::c);
    const double q = std::sqrt(k * k + w2);
    const double g_te = std::sqrt(k * k + exx * w2);
    const double g_tm = std::sqrt(exx * (k * k / ezz + w2));
    // Sign conventions differ by an overall minus; only Q^2 enters the force.
    EXPECT_NEAR(got.te, -oracle::slab_q_factor(q, g_te, 1.0, 2.0, ell), 1e-12);
    EXPECT_NEAR(got.tm, -oracle::slab_q_factor(q, g_tm, exx, 2.0, ell), 1e-12);
    EXPECT_LT(got.tm, 0.0);
    EXPECT_GT(got.te, 0.0);
  }
}

TEST(Lifshitz, HalfSpaceLimit) {
  const double wp = 1e16;
  const auto slab = plasma_slab(wp, 0.0, 1e4);
  const double k = 0.5, xi = 1e15, ell = 2.0;
  const double eps = 1.0 + wp * wp / (xi * xi);
  const double q = std::sqrt(k * k + xi * xi / (units::c * units::c));
  const double g = std::sqrt(k * k + eps * xi * xi / (units::c * units::c));
  const auto r = q_factors(slab, k, xi, ell);
  EXPECT_NEAR(r.te, (g - q) / (g + q) * std::exp(-q * ell), 1e-15);
  EXPECT_NEAR(r.tm, (g - q * eps) / (g + q * eps) * std::exp(-q * ell), 1e-15);
}

TEST(Lifshitz, AttractiveAndDecreasing) {
  for (auto model : {ModelKind::FWM, ModelKind::IWM, ModelKind::PBM}) {
    const auto t = std::make_shared<const DielectricTensor>(
        make_film_state(presets::cesium(), model, 1.0), derive_bulk(presets::cesium()));
    const auto slab = quantized_slab(t);
    double previous = -std::numeric_limits<double>::infinity();
    for (double ell : {1.0, 3.0, 10.0, 30.0, 100.0}) {
      const double f = force(slab, ell).pressure;
      EXPECT_LT(f, 0.0);
      EXPECT_GT(f, previous);
      previous = f;
    }
  }
}

TEST(Lifshitz, ReductionVanishesForLargeSeparationAndThickness) {
  const auto cs = presets::cesium();
  EXPECT_LT(delta_P(cs, ModelKind::FWM, 1.0, 1000.0).delta, delta_P(cs, ModelKind::FWM, 1.0, 10.0).delta);
  EXPECT_LT(delta_P(cs, ModelKind::FWM, 1.0, 1000.0).delta, 0.005);
  EXPECT_LT(delta_P(cs, ModelKind::FWM, 40.0, 5.0).delta, delta_P(cs, ModelKind::FWM, 5.0, 5.0).delta);
  EXPECT_LT(std::abs(delta_P(cs, ModelKind::FWM, 40.0, 5.0).delta), 0.005);
}

TEST(Lifshitz, DrudeAtZeroGammaIsPlasmaBitForBit) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> lD(std::log(0.5), std::log(10.0)), ll(std::log(1.0), std::log(100.0));
  const auto mats = presets::all();
  for (int i = 0; i < 5; ++i) {
    const auto& m = mats[i % 3];
    const auto model = static_cast<ModelKind>(i % 3);
    const double D = std::exp(lD(rng)), ell = std::exp(ll(rng));
    const auto p = delta_P(m, model, D, ell);
    const auto d = delta_D(m, model, D, ell, 0.0);
    EXPECT_EQ(p.delta, d.delta);
    EXPECT_EQ(p.film.pressure, d.film.pressure);
    EXPECT_EQ(p.reference.pressure, d.reference.pressure);
  }
}

TEST(Lifshitz, TighterToleranceStaysWithinErrorEstimate) {
  const auto t = std::make_shared<const DielectricTensor>(
      make_film_state(presets::silver(), ModelKind::FWM, 5.0), derive_bulk(presets::silver()));
  const auto slab = quantized_slab(t);
  for (double ell : {1.0, 20.0}) {
    const auto a = force(slab, ell, {1e-6});
    const auto b = force(slab, ell, {5e-7});
    EXPECT_LT(std::abs(a.pressure - b.pressure), a.abs_error_estimate);
    EXPECT_LE(a.abs_error_estimate, 1e-6 * std::abs(a.pressure));
  }
}

TEST(Lifshitz, ExhaustedBudgetCarriesPartialValue) {
  ForceOptions opt;
  opt.rel_tol = 1e-12;
  opt.max_intervals = 4;
  try {
    force(plasma_slab(1e16, 0.0, 1.0), 10.0, opt);
    FAIL() << "expected ConvergenceError";
  } catch (const ConvergenceError& e) {
    EXPECT_LT(e.partial_value(), 0.0);
    EXPECT_GT(e.partial_error(), 0.0);
  }
}

TEST(Lifshitz, InvalidArguments) {
  const auto slab = plasma_slab(1e16, 0.0, 1.0);
  EXPECT_THROW(force(slab, 0.0), std::invalid_argument);
  EXPECT_THROW(force(slab, 1.0, {1.5}), std::invalid_argument);
  EXPECT_THROW(delta_D(presets::silver(), ModelKind::FWM, 1.0, 1.0, -1.0), std::invalid_argument);
}

TEST(Lifshitz, CesiumOneNanometreReductionAboveTenPercent) {
  EXPECT_GT(delta_P(presets::cesium(), ModelKind::FWM, 1.0, 1.0).delta, 0.10);
}

TEST(Lifshitz, RelaxationIncreasesReductionForSilver) {
  const auto ag = presets::silver();
  EXPECT_GT(delta_D(ag, ModelKind::FWM, 5.0, 5.0, 1e14).delta, delta_P(ag, ModelKind::FWM, 5.0, 5.0).delta);
}
