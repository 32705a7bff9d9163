#include "casimir_qse/dielectric.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <sstream>
#include <thread>

using namespace casimir_qse;

namespace {
DielectricTensor tensor(const Material& m, ModelKind model, double D, double gamma = 0.0) {
  return DielectricTensor(make_film_state(m, model, D), derive_bulk(m), OmegaScaling::SquareRoot,
                          gamma);
}
} // namespace

TEST(Dielectric, PlasmaFrequencyPerModel) {
  const auto ag = presets::silver();
  const auto bulk = derive_bulk(ag);
  EXPECT_DOUBLE_EQ(tensor(ag, ModelKind::FWM, 2.0).omega_p(), bulk.Omega_P);
  EXPECT_DOUBLE_EQ(tensor(ag, ModelKind::IWM, 2.0).omega_p(), bulk.Omega_P);
  EXPECT_LT(tensor(ag, ModelKind::PBM, 2.0).omega_p(), bulk.Omega_P);
  const DielectricTensor linear(make_film_state(ag, ModelKind::PBM, 2.0), bulk, OmegaScaling::Linear);
  EXPECT_LT(linear.omega_p(), tensor(ag, ModelKind::PBM, 2.0).omega_p());
}

TEST(Dielectric, LateralComponent) {
  const auto t = tensor(presets::aluminium(), ModelKind::FWM, 1.0);
  EXPECT_DOUBLE_EQ(t.eps_xx(t.omega_p()), 2.0);
  const auto td = tensor(presets::aluminium(), ModelKind::FWM, 1.0, 1e14);
  for (double xi : {1e12, 1e14, 1e16}) EXPECT_LT(td.eps_xx(xi), t.eps_xx(xi));
  const double wp = td.omega_p(), g = td.gamma();
  for (double xi : {10.0 * wp, 100.0 * wp, 1e3 * wp}) {
    const double series = wp * wp / (xi * xi) * (1.0 - g / xi + g * g / (xi * xi));
    EXPECT_NEAR(td.eps_xx(xi), 1.0 + series, 1e-10);
  }
  EXPECT_THROW(t.eps_xx(0.0), std::domain_error);
  EXPECT_THROW(t.eps_zz(-1.0), std::domain_error);
}

TEST(Dielectric, BulkReference) {
  const auto bulk = derive_bulk(presets::cesium());
  EXPECT_DOUBLE_EQ(eps_isotropic_bulk(bulk, 0.0, bulk.Omega_P), 2.0);
  const auto t = tensor(presets::cesium(), ModelKind::FWM, 2.0, 5e13);
  for (double xi : {1e11, 1e13, 1e15}) EXPECT_DOUBLE_EQ(eps_isotropic_bulk(bulk, 5e13, xi), t.eps_xx(xi));
}

TEST(Dielectric, NegativeGammaRejected) {
  EXPECT_THROW(tensor(presets::cesium(), ModelKind::FWM, 2.0, -1.0), std::invalid_argument);
}

TEST(Dielectric, NormalComponentShape) {
  for (auto model : {ModelKind::FWM, ModelKind::IWM, ModelKind::PBM}) {
    const auto t = tensor(presets::silver(), model, 2.0);
    const auto td = tensor(presets::silver(), model, 2.0, 1e14);
    double previous = t.eps_zz_static();
    EXPECT_GT(previous, 1.0);
    EXPECT_TRUE(std::isfinite(previous));
    for (double xi = 1e11; xi < 1e19; xi *= 1.5) {
      const double e = t.eps_zz(xi);
      EXPECT_LT(e, previous);
      EXPECT_LT(td.eps_zz(xi), e);
      previous = e;
    }
    EXPECT_NEAR(t.eps_zz(1e22), 1.0, 1e-6);
  }
}

TEST(Dielectric, UnmergedSumAgreesAtLargeFrequency) {
  for (auto model : {ModelKind::FWM, ModelKind::IWM, ModelKind::PBM}) {
    const auto t = tensor(presets::cesium(), model, 1.5, 5e13);
    const double wp = t.omega_p();
    for (int i = 0; i < 20; ++i) {
      const double xi = wp * std::pow(10.0, i / 19.0 * 3.0);
      const double ref = oracle::eps_zz_unmerged(t.state(), xi, t.gamma());
      EXPECT_NEAR((t.eps_zz(xi) - 1.0) / (ref - 1.0), 1.0, 1e-8) << to_string(model) << " " << xi;
    }
    const double xi = 1e4 * wp;
    EXPECT_NEAR((t.eps_zz(xi) - 1.0) * xi * (xi + t.gamma()) / t.sum_rule_weight(), 1.0, 1e-4);
  }
}

TEST(Dielectric, SumRuleFraction) {
  EXPECT_NEAR(tensor(presets::aluminium(), ModelKind::IWM, 2.0).sum_rule_fraction(), 1.0, 5e-3);
  const double fw = tensor(presets::aluminium(), ModelKind::FWM, 2.0).sum_rule_fraction();
  EXPECT_GT(fw, 0.8);
  EXPECT_LT(fw, 1.0);
}

TEST(Dielectric, SingleBoundStateGivesUnitNormalResponse) {
  // A one-level finite well has no bound transitions.
  const auto st = make_film_state(presets::cesium(), ModelKind::FWM, 0.05);
  ASSERT_EQ(st.spectrum.size(), 1u);
  const DielectricTensor t(st, derive_bulk(presets::cesium()));
  EXPECT_TRUE(t.oscillators().empty());
  EXPECT_DOUBLE_EQ(t.eps_zz(1e14), 1.0);
}

TEST(Dielectric, IsotropyRestoredForThickFilms) {
  for (const auto& mat : presets::all()) {
    const auto bulk = derive_bulk(mat);
    const double D = 50.0 * units::pi / bulk.kF_bulk;
    for (auto model : {ModelKind::FWM, ModelKind::IWM, ModelKind::PBM}) {
      const auto t = tensor(mat, model, D);
      for (double xi : {t.omega_p(), 3.0 * t.omega_p()})
        EXPECT_NEAR(t.eps_zz(xi) / t.eps_xx(xi), 1.0, 0.01) << mat.name << to_string(model) << xi;
    }
    // Below the plasma frequency the anisotropy still closes, roughly as 1 / D.
    auto gap = [&](double x) {
      const auto t = tensor(mat, ModelKind::IWM, x * units::pi / bulk.kF_bulk);
      const double xi = 0.3 * t.omega_p();
      return 1.0 - t.eps_zz(xi) / t.eps_xx(xi);
    };
    EXPECT_LT(gap(100.0), 0.6 * gap(50.0));
  }
}

TEST(Dielectric, ConcurrentReadsAgree) {
  const auto t = tensor(presets::silver(), ModelKind::FWM, 4.0, 1e14);
  std::vector<double> a(200), b(200);
  auto fill = [&](std::vector<double>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = t.eps_zz(1e12 * (i + 1));
  };
  std::thread th([&] { fill(a); });
  fill(b);
  th.join();
  EXPECT_EQ(a, b);
}

TEST(Dielectric, TableCsv) {
  const auto t = tensor(presets::silver(), ModelKind::IWM, 1.0);
  std::ostringstream os;
  const std::vector<double> grid{1e13, 1e15};
  write_dielectric_table_csv(os, t, grid);
  std::istringstream in(os.str());
  const auto table = csv::read(in);
  ASSERT_EQ(table.rows.size(), 2u);
  EXPECT_DOUBLE_EQ(table.number(1, "eps_zz"), std::stod(csv::format_number(t.eps_zz(1e15))));
}
