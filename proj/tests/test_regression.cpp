#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>

#include "sizevix/regression.hpp"
#include "sizevix/rng.hpp"
#include "test_util.hpp"

using namespace sizevix;

TEST_CASE("exact linear data is fit exactly") {
  const OlsFit fit = ols_fit({{1, 1, 1}, {0, 1, 2}}, {1, 3, 5});
  CHECK(fit.coefficients[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit.coefficients[1] == doctest::Approx(2.0).epsilon(1e-12));
  for (double r : fit.residuals) CHECK(std::abs(r) < 1e-12);
  CHECK(fit.s2 == doctest::Approx(0.0).epsilon(1e-20));
}

TEST_CASE("noiseless design recovers coefficients to 1e-10") {
  Rng rng(7);
  std::vector<std::vector<double>> cols(3, std::vector<double>(50));
  std::vector<double> y(50);
  for (std::size_t t = 0; t < 50; ++t) {
    cols[0][t] = 1.0;
    cols[1][t] = rng.normal();
    cols[2][t] = rng.normal() + 0.5;
    y[t] = 0.7 - 1.3 * cols[1][t] + 2.9 * cols[2][t];
  }
  const OlsFit fit = ols_fit(cols, y);
  CHECK(std::abs(fit.coefficients[0] - 0.7) < 1e-10);
  CHECK(std::abs(fit.coefficients[1] + 1.3) < 1e-10);
  CHECK(std::abs(fit.coefficients[2] - 2.9) < 1e-10);
}

TEST_CASE("matches the brute-force normal equations on noisy data") {
  Rng rng(8);
  std::vector<std::vector<double>> cols(3, std::vector<double>(200));
  std::vector<double> y(200);
  for (std::size_t t = 0; t < 200; ++t) {
    cols[0][t] = 1.0;
    cols[1][t] = rng.normal();
    cols[2][t] = rng.normal();
    y[t] = 0.5 - 1.0 * cols[1][t] + 2.0 * cols[2][t] + rng.normal();
  }
  const OlsFit fit = ols_fit(cols, y);
  const auto oracle = testutil::normal_equations(cols, y);
  for (int j = 0; j < 3; ++j) CHECK(std::abs(fit.coefficients[j] - oracle[j]) < 1e-10);
}

TEST_CASE("oracle equivalence holds across 100 random instances") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(1000 + seed);
    std::vector<std::vector<double>> cols(3, std::vector<double>(50));
    std::vector<double> y(50);
    for (std::size_t t = 0; t < 50; ++t) {
      cols[0][t] = 1.0;
      cols[1][t] = rng.normal();
      cols[2][t] = 0.5 * rng.normal() - 1.0;
      y[t] = rng.normal();
    }
    const OlsFit fit = ols_fit(cols, y);
    const auto oracle = testutil::normal_equations(cols, y);
    for (int j = 0; j < 3; ++j) REQUIRE(std::abs(fit.coefficients[j] - oracle[j]) < 1e-10);
  }
}

TEST_CASE("adding a constant to y only shifts the intercept") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(2000 + seed);
    std::vector<std::vector<double>> cols(3, std::vector<double>(80));
    std::vector<double> y(80), y_shift(80);
    const double c = 3.25;
    for (std::size_t t = 0; t < 80; ++t) {
      cols[0][t] = 1.0;
      cols[1][t] = rng.normal();
      cols[2][t] = rng.normal();
      y[t] = rng.normal();
      y_shift[t] = y[t] + c;
    }
    const OlsFit a = ols_fit(cols, y);
    const OlsFit b = ols_fit(cols, y_shift);
    REQUIRE(std::abs(b.coefficients[0] - a.coefficients[0] - c) < 1e-10);
    REQUIRE(std::abs(b.coefficients[1] - a.coefficients[1]) < 1e-10);
    REQUIRE(std::abs(b.coefficients[2] - a.coefficients[2]) < 1e-10);
  }
}

TEST_CASE("rank-deficient and undersized designs are rejected") {
  CHECK_THROWS_AS(ols_fit({{1, 1, 1}, {2, 2, 2}}, {1, 2, 3}), std::runtime_error);
  CHECK_THROWS_AS(ols_fit({{1, 1}, {0, 1}}, {1, 2}), std::invalid_argument);
}

TEST_CASE("residual variance interval covers the truth") {
  // Data generated with unit noise: the 95% interval for s^2 should cover 1
  // in at least 90% of replications.
  int covered = 0;
  for (std::uint64_t rep = 0; rep < 200; ++rep) {
    Rng rng(3000 + rep);
    std::vector<std::vector<double>> cols(3, std::vector<double>(404));
    std::vector<double> y(404);
    for (std::size_t t = 0; t < 404; ++t) {
      cols[0][t] = 1.0;
      cols[1][t] = -4.0 + rng.normal();
      cols[2][t] = cols[1][t] * (0.3 + rng.normal());
      y[t] = -0.56 - 0.04 * cols[1][t] - 0.17 * cols[2][t] + rng.normal();
    }
    const OlsFit fit = ols_fit(cols, y);
    if (fit.s2_ci95.first <= 1.0 && 1.0 <= fit.s2_ci95.second) ++covered;
  }
  CHECK(covered >= 180);
}

TEST_CASE("ljung-box matches the reference implementation") {
  std::ifstream in(testutil::data_dir() / "ljung_box_sample.csv");
  REQUIRE(in.good());
  std::string line;
  std::getline(in, line);  // header
  std::vector<double> sample;
  while (std::getline(in, line))
    if (!line.empty()) sample.push_back(std::stod(line));
  REQUIRE(sample.size() == 400);
  // statsmodels acorr_ljungbox(|x|, lags=[10]) on this fixture.
  CHECK(std::abs(ljung_box_abs(sample, 10) - 0.726030531468761) < 1e-8);
}

TEST_CASE("ljung-box flags persistent absolute values") {
  Rng rng(9);
  std::vector<double> x(400);
  double prev = 0.0;
  for (double& v : x) {
    prev = 0.8 * prev + rng.normal();
    v = prev;
  }
  CHECK(ljung_box_abs(x, 10) < 0.001);
}

TEST_CASE("ljung-box ignores signs and rejects constant magnitudes") {
  Rng rng(10);
  std::vector<double> x(300), flipped(300);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = rng.normal();
    flipped[i] = (i % 2 == 0) ? -x[i] : x[i];
  }
  CHECK(ljung_box_abs(x, 10) == doctest::Approx(ljung_box_abs(flipped, 10)).epsilon(1e-14));

  std::vector<double> alternating(100);
  for (std::size_t i = 0; i < alternating.size(); ++i) alternating[i] = i % 2 ? 1.0 : -1.0;
  CHECK_THROWS_WITH_AS(ljung_box_abs(alternating, 10), doctest::Contains("zero variance"),
                       std::runtime_error);
}

TEST_CASE("jarque-bera hand-computed case") {
  // Skewness 0, kurtosis 1 on +-1 values: JB = 1, p = exp(-1/2).
  const std::vector<double> x = {-1, 1, -1, 1, -1, 1};
  CHECK(jarque_bera(x) == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
}

TEST_CASE("jarque-bera distributional behaviour") {
  Rng rng(11);
  std::vector<double> normal(100000);
  for (double& v : normal) v = rng.normal();
  CHECK(jarque_bera(normal) > 0.01);

  std::vector<double> expo(400);
  for (double& v : expo) v = rng.exponential();
  CHECK(jarque_bera(expo) < 1e-6);

  CHECK_THROWS_AS(jarque_bera({1.0, 1.0, 1.0, 1.0}), std::runtime_error);
}

namespace {

// Dataset generated exactly from the returns/premia regressions with the
// given coefficients and per-observation noise from `noise`.
template <typename NoiseFn>
ModelDataset synthetic_dataset(std::size_t t_obs, double m, double a, double b,
                               std::uint64_t seed, NoiseFn&& noise) {
  Rng rng(seed);
  ModelDataset ds;
  MonthKey key{1990, 1};
  for (std::size_t t = 0; t <= t_obs; ++t) {
    ds.months.push_back(key);
    key = key.next();
  }
  for (int d = 0; d < 9; ++d) ds.rel_size[d].resize(t_obs + 1);
  for (std::size_t t = 0; t < t_obs; ++t) {
    const double v = 0.2 * std::exp(0.3 * rng.normal());
    const double r0 = v * (0.062 + 0.202 * rng.normal());
    ds.vol.push_back(v);
    ds.bench_return.push_back(r0);
    ds.bench_premium.push_back(r0);
    for (int d = 0; d < 9; ++d) {
      const double c = -4.0 + 1.5 * rng.normal();
      ds.rel_size[d][t] = c;
      const double y = m + a * c + b * c * r0 / v + noise(rng);
      ds.ret[d].push_back(r0 + v * y);
      ds.premium[d].push_back(r0 + v * y);
    }
  }
  for (int d = 0; d < 9; ++d) ds.rel_size[d][t_obs] = ds.rel_size[d][t_obs - 1];
  return ds;
}

}  // namespace

TEST_CASE("size-CAPM fits recover a noiseless model exactly") {
  const auto ds = synthetic_dataset(120, -0.5646, -0.0433, -0.1708, 12, [](Rng&) { return 0.0; });
  for (int d : {1, 5, 9}) {
    const SizeCapmFit ret = fit_returns_model(ds, d);
    CHECK(std::abs(ret.intercept + 0.5646) < 1e-10);
    CHECK(std::abs(ret.alpha_slope + 0.0433) < 1e-10);
    CHECK(std::abs(ret.beta_slope + 0.1708) < 1e-10);
    const SizeCapmFit prem = fit_premia_model(ds, d);
    CHECK(std::abs(prem.intercept + 0.5646) < 1e-10);
    CHECK(std::abs(prem.beta_slope + 0.1708) < 1e-10);
  }
}

TEST_CASE("noisy size-CAPM fit lands near the truth with unit s2") {
  const auto ds =
      synthetic_dataset(10000, -0.5, -0.05, -0.15, 13, [](Rng& r) { return r.normal(); });
  const SizeCapmFit fit = fit_returns_model(ds, 4);
  CHECK(fit.intercept == doctest::Approx(-0.5).epsilon(0.2));
  CHECK(fit.beta_slope == doctest::Approx(-0.15).epsilon(0.2));
  CHECK(fit.s2 == doctest::Approx(1.0).epsilon(0.05));
  CHECK(fit.s2_ci95.first < 1.0);
  CHECK(fit.s2_ci95.second > 1.0);
  CHECK(fit.ljung_box_p > 0.001);
  CHECK(fit.jarque_bera_p > 0.001);
}

TEST_CASE("degenerate regressors cause a singularity error") {
  // Target identical to the benchmark and zero relative size: both slope
  // columns vanish.
  auto ds = synthetic_dataset(60, 0.0, 0.0, 0.0, 14, [](Rng&) { return 0.0; });
  for (std::size_t t = 0; t < ds.n_obs(); ++t) {
    ds.rel_size[0][t] = 0.0;
    ds.ret[0][t] = ds.bench_return[t];
  }
  ds.rel_size[0][ds.n_obs()] = 0.0;
  CHECK_THROWS_AS(fit_returns_model(ds, 1), std::runtime_error);
}

TEST_CASE("decile bounds and short datasets are rejected") {
  const auto ds = synthetic_dataset(60, 0.0, 0.0, -0.1, 15, [](Rng&) { return 0.0; });
  CHECK_THROWS_AS(fit_returns_model(ds, 0), std::invalid_argument);
  CHECK_THROWS_AS(fit_returns_model(ds, 10), std::invalid_argument);
  const auto tiny = synthetic_dataset(20, 0.0, 0.0, -0.1, 16, [](Rng&) { return 0.0; });
  CHECK_THROWS_AS(fit_returns_model(tiny, 1), std::invalid_argument);
}
