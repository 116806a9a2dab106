// End-to-end tests that drive the installed binary (path in SIZEVIX_CLI).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <string>

#include "sizevix/csv.hpp"
#include "sizevix/data_ingest.hpp"
#include "sizevix/market_sim.hpp"
#include "test_util.hpp"

using namespace sizevix;
using json = nlohmann::json;
using testutil::TempDir;

namespace {

std::string cli() {
  const char* path = std::getenv("SIZEVIX_CLI");
  REQUIRE_MESSAGE(path != nullptr, "SIZEVIX_CLI must point at the binary");
  return path;
}

int run(const std::string& args) {
  const int status = std::system((cli() + " " + args).c_str());
  return WEXITSTATUS(status);
}

int run_quiet(const std::string& args) {
  return run(args + " >/dev/null 2>&1");
}

std::vector<std::pair<double, double>> read_curve(const std::filesystem::path& p) {
  const auto rows = read_csv(p);
  REQUIRE(rows.size() > 1);
  REQUIRE(rows[0] == std::vector<std::string>({"x", "y"}));
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 1; i < rows.size(); ++i)
    pts.emplace_back(parse_double(rows[i][0], "x"), parse_double(rows[i][1], "y"));
  return pts;
}

// Writes a fully synthetic panel in the documented formats, generated from
// the model itself with known coefficients, so `fit` can be checked
// end to end.
struct PanelTruth {
  double m = -0.5, a = -0.04, b = -0.15;
  double prem_m = -0.45, prem_a = -0.04, prem_b = -0.15;
};

void write_synthetic_sources(const std::filesystem::path& dir, const PanelTruth& truth,
                             std::size_t t_len, std::uint64_t seed) {
  ModelParams p = with_units(reference_params(), VixUnits::Monthly);
  p.n_portfolios = 9;
  p.ret_intercept = truth.m;
  p.ret_alpha_slope = truth.a;
  p.ret_beta_slope = truth.b;
  p.prem_intercept = truth.prem_m;
  p.prem_alpha_slope = truth.prem_a;
  p.prem_beta_slope = truth.prem_b;

  const std::size_t burn = 300;
  const SimPaths paths = simulate_market(p, burn + t_len, std::vector<double>(9, -10.0),
                                         default_lnv0(p.units), seed);
  const PremiaPaths prem = simulate_premia(paths, p, seed + 1);

  const double rf_annual = 3.0;
  const double rf_log = std::log1p(rf_annual / 100.0) / 12.0;

  DecilePanel panel;
  MonthlySeries vix, rf;
  MonthKey key{1990, 1};
  std::vector<double> bench_size(t_len);
  double s10 = 20000.0;
  for (std::size_t t = 0; t < t_len; ++t) {
    bench_size[t] = s10;
    s10 *= std::exp(paths.r0[burn + t]);
  }
  for (std::size_t t = 0; t < t_len; ++t) {
    const std::size_t src = burn + t;
    vix.months.push_back(key);
    vix.values.push_back(paths.v[src] * 100.0);
    rf.months.push_back(key);
    rf.values.push_back(rf_annual);
    for (int d = 0; d < 10; ++d) {
      const double size =
          d == 9 ? bench_size[t] : bench_size[t] * std::exp(paths.c[d][src]);
      const double ret = d == 9 ? paths.r0[src]
                                : paths.c[d][src + 1] - paths.c[d][src] + paths.r0[src];
      const double premium = d == 9 ? prem.p0[src] : prem.p[d][src];
      panel.size[d].months.push_back(key);
      panel.size[d].values.push_back(size);
      panel.price_return[d].months.push_back(key);
      panel.price_return[d].values.push_back((std::exp(ret) - 1.0) * 100.0);
      panel.total_return[d].months.push_back(key);
      panel.total_return[d].values.push_back((std::exp(premium + rf_log) - 1.0) * 100.0);
    }
    key = key.next();
  }
  save_french_deciles(panel, dir);

  std::string vix_csv = "DATE,VIX\n";
  std::string rf_csv = "observation_date,RATE\n";
  for (std::size_t t = 0; t < t_len; ++t) {
    char date[16];
    std::snprintf(date, sizeof(date), "%04d-%02d-01", vix.months[t].year, vix.months[t].month);
    vix_csv += std::string(date) + "," + format_double(vix.values[t]) + "\n";
    rf_csv += std::string(date) + "," + format_double(rf.values[t]) + "\n";
  }
  testutil::write_file(dir / "vix.csv", vix_csv);
  testutil::write_file(dir / "rate.csv", rf_csv);
}

}  // namespace

TEST_CASE("simulate emits a ranked curve with provenance") {
  TempDir dir;
  const std::string out = (dir.path / "curve.csv").string();
  REQUIRE(run_quiet("simulate --N 100 --T 400 --c 0.1 --rho 0 --seed 7 --out " + out) == 0);
  const auto pts = read_curve(out);
  REQUIRE(pts.size() == 100);
  for (std::size_t i = 1; i < pts.size(); ++i) CHECK(pts[i].second <= pts[i - 1].second);

  const json meta = json::parse(testutil::read_file(out + ".meta.json"));
  CHECK(meta["command"] == "simulate");
  CHECK(meta["seed"] == 7);
  CHECK(meta["params"]["b"] == -0.1);
  CHECK(meta["params"]["N"] == 100);
}

TEST_CASE("reruns are byte-identical and seeds matter") {
  TempDir dir;
  const std::string a = (dir.path / "a.csv").string();
  const std::string b = (dir.path / "b.csv").string();
  const std::string c = (dir.path / "c.csv").string();
  REQUIRE(run_quiet("simulate --N 20 --T 50 --seed 11 --out " + a) == 0);
  REQUIRE(run_quiet("simulate --N 20 --T 50 --seed 11 --out " + b) == 0);
  REQUIRE(run_quiet("simulate --N 20 --T 50 --seed 12 --out " + c) == 0);
  CHECK(testutil::read_file(a) == testutil::read_file(b));
  CHECK(testutil::read_file(a) != testutil::read_file(c));
}

TEST_CASE("stability point report") {
  TempDir dir;
  const std::string out = (dir.path / "report.json").string();
  REQUIRE(run_quiet("stability --a 0 --b 0 --samples 10000 --seed 1 --out " + out) == 0);
  const json report = json::parse(testutil::read_file(out));
  CHECK(report["log_moment"] == 0.0);
  CHECK(report["std_error"] == 0.0);
  CHECK(report["verdict"] == "inconclusive");

  const std::string out2 = (dir.path / "report2.json").string();
  REQUIRE(run_quiet("stability --a 0 --b -0.15 --samples 100000 --seed 1 --out " + out2) == 0);
  const json r2 = json::parse(testutil::read_file(out2));
  CHECK(r2["log_moment"].get<double>() < 0.0);
  CHECK(r2["verdict"] == "stable");
  CHECK(r2["first_order"].get<double>() < 0.0);
}

TEST_CASE("stability region grid output") {
  TempDir dir;
  const std::string out = (dir.path / "region.csv").string();
  const std::string boundary = (dir.path / "boundary.csv").string();
  // Grid 13 places mu = 1.0 exactly on the axis.
  REQUIRE(run_quiet("stability --region --grid 13 --samples-per-cell 20000 --seed 5 --out " + out +
                    " --boundary-out " + boundary) == 0);
  const auto rows = read_csv(out);
  REQUIRE(rows.size() == 1 + 13 * 13);
  CHECK(rows[0] == std::vector<std::string>({"mu", "rho", "value"}));

  // Parallel cells with per-cell seeds: a rerun must be byte-identical.
  const std::string again = (dir.path / "region2.csv").string();
  REQUIRE(run_quiet("stability --region --grid 13 --samples-per-cell 20000 --seed 5 --out " +
                    again) == 0);
  CHECK(testutil::read_file(out) == testutil::read_file(again));

  const auto brows = read_csv(boundary);
  REQUIRE(brows.size() > 1);
  // The rho = 0 row crosses at mu = 1 exactly.
  bool found = false;
  for (std::size_t i = 1; i < brows.size(); ++i)
    if (parse_double(brows[i][1], "rho") == 0.0 &&
        std::abs(parse_double(brows[i][0], "mu") - 1.0) < 1e-12)
      found = true;
  CHECK(found);
}

TEST_CASE("extremes curves and companion references") {
  TempDir dir;
  const std::string up = (dir.path / "up.csv").string();
  REQUIRE(run_quiet("extremes --upper -m 50 --seed 3 --out " + up) == 0);
  const auto up_pts = read_curve(up);
  const auto ref_pts = read_curve(dir.path / "up.ref.csv");
  REQUIRE(up_pts.size() == 50);
  REQUIRE(ref_pts.size() == 50);
  for (std::size_t i = 0; i < ref_pts.size(); ++i)
    CHECK(ref_pts[i].second == doctest::Approx(-ref_pts[i].first).epsilon(1e-14));

  const std::string low = (dir.path / "low.csv").string();
  REQUIRE(run_quiet("extremes --lower -m 50 -N 500 --seed 3 --out " + low) == 0);
  const auto low_pts = read_curve(low);
  const auto low_ref = read_curve(dir.path / "low.ref.csv");
  for (std::size_t i = 0; i < low_ref.size(); ++i)
    CHECK(low_ref[i].second ==
          doctest::Approx(std::log(501.0 - std::exp(low_ref[i].first))).epsilon(1e-9));
  // Same seed: the reflection identity ties the two outputs together.
  for (std::size_t i = 0; i < 50; ++i)
    CHECK(up_pts[i].second == doctest::Approx(-low_pts[i].second).epsilon(1e-14));

  const std::string nc = (dir.path / "nc.csv").string();
  REQUIRE(run_quiet("extremes --normal-curve -N 100 --seed 9 --out " + nc) == 0);
  const auto nc_pts = read_curve(nc);
  REQUIRE(nc_pts.size() == 100);
  for (std::size_t i = 1; i < nc_pts.size(); ++i) CHECK(nc_pts[i].second <= nc_pts[i - 1].second);

  // Determinism across reruns.
  const std::string up2 = (dir.path / "up2.csv").string();
  REQUIRE(run_quiet("extremes --upper -m 50 --seed 3 --out " + up2) == 0);
  CHECK(testutil::read_file(up) == testutil::read_file(up2));
}

TEST_CASE("curve standardizes an emitted paths file") {
  TempDir dir;
  const std::string curve_out = (dir.path / "curve.csv").string();
  const std::string paths_out = (dir.path / "paths.csv").string();
  REQUIRE(run_quiet("simulate --N 50 --T 300 --seed 21 --out " + curve_out + " --emit-paths " +
                    paths_out) == 0);
  const std::string std_out = (dir.path / "std.csv").string();
  REQUIRE(run_quiet("curve --paths " + paths_out + " --standardize --terms 150 --out " +
                    std_out) == 0);
  const auto pts = read_curve(std_out);
  REQUIRE(pts.size() == 50);
  for (std::size_t i = 1; i < pts.size(); ++i) CHECK(pts[i].second <= pts[i - 1].second);
  // Standardized values should look like a ranked normal sample.
  CHECK(std::abs(pts.front().second) < 6.0);
  CHECK(std::abs(pts.back().second) < 6.0);

  // Ranking the raw final state must reproduce the simulate output.
  const std::string rank_out = (dir.path / "rank.csv").string();
  REQUIRE(run_quiet("curve --paths " + paths_out + " --out " + rank_out) == 0);
  CHECK(testutil::read_file(rank_out) == testutil::read_file(curve_out));
}

TEST_CASE("fit recovers the generating coefficients from synthetic files") {
  TempDir dir;
  const PanelTruth truth;
  write_synthetic_sources(dir.path, truth, 405, 12345);

  const std::string out = (dir.path / "tables.json").string();
  REQUIRE(run_quiet("fit --deciles-dir " + dir.path.string() + " --vix " +
                    (dir.path / "vix.csv").string() + " --rf " + (dir.path / "rate.csv").string() +
                    " --out " + out) == 0);
  const json tables = json::parse(testutil::read_file(out));
  REQUIRE(tables["returns"].size() == 9);
  REQUIRE(tables["premia"].size() == 9);

  double b_sum = 0.0, prem_b_sum = 0.0;
  int s2_covered = 0;
  for (int d = 0; d < 9; ++d) {
    const auto& ret = tables["returns"][d];
    const auto& prem = tables["premia"][d];
    CHECK(ret["decile"] == d + 1);
    b_sum += ret["b"].get<double>();
    prem_b_sum += prem["b"].get<double>();
    CHECK(std::abs(ret["b"].get<double>() - truth.b) < 0.12);
    CHECK(std::abs(prem["b"].get<double>() - truth.prem_b) < 0.12);
    const auto ci = ret["s2_ci95"];
    if (ci[0].get<double>() <= 1.0 && 1.0 <= ci[1].get<double>()) ++s2_covered;
  }
  CHECK(std::abs(b_sum / 9.0 - truth.b) < 0.05);
  CHECK(std::abs(prem_b_sum / 9.0 - truth.prem_b) < 0.05);
  CHECK(s2_covered >= 7);

  const auto& ar1 = tables["vix_ar1"];
  CHECK(std::abs(ar1["beta"].get<double>() - 0.882) < 0.08);

  // CSV emission of the same tables.
  const std::string csv_out = (dir.path / "tables.csv").string();
  REQUIRE(run_quiet("fit --deciles-dir " + dir.path.string() + " --vix " +
                    (dir.path / "vix.csv").string() + " --rf " + (dir.path / "rate.csv").string() +
                    " --format csv --out " + csv_out) == 0);
  const auto rows = read_csv(csv_out);
  REQUIRE(rows.size() == 19);
  CHECK(rows[0][0] == "decile");
}

TEST_CASE("vix-only fit prints the AR(1) summary") {
  TempDir dir;
  write_synthetic_sources(dir.path, PanelTruth{}, 200, 777);
  const std::string out = (dir.path / "ar1.json").string();
  REQUIRE(run_quiet("fit --vix " + (dir.path / "vix.csv").string() + " --out " + out) == 0);
  const json j = json::parse(testutil::read_file(out));
  CHECK(j["vix_ar1"].contains("alpha"));
  CHECK(j["vix_ar1"].contains("beta_ci95"));
  CHECK(j["vix_ar1"]["n"].get<int>() == 199);
}

TEST_CASE("exit codes distinguish usage and data errors") {
  TempDir dir;
  CHECK(run_quiet("frobnicate") == 2);
  CHECK(run_quiet("simulate --no-such-flag 1 --out x.csv") == 2);
  CHECK(run_quiet("fit --vix " + (dir.path / "missing.csv").string()) == 1);
  // Unknown key in a params file is a usage error.
  testutil::write_file(dir.path / "bad.params", "nope=1\n");
  CHECK(run_quiet("simulate --params " + (dir.path / "bad.params").string() + " --out " +
                  (dir.path / "x.csv").string()) == 2);
  // Params file values are overridden by explicit flags.
  testutil::write_file(dir.path / "ok.params", "c=0.2\nN=5\nT=20\nseed=3\n");
  const std::string out = (dir.path / "p.csv").string();
  REQUIRE(run_quiet("simulate --params " + (dir.path / "ok.params").string() + " --c 0.1 --out " +
                    out) == 0);
  const json meta = json::parse(testutil::read_file(out + ".meta.json"));
  CHECK(meta["params"]["b"] == -0.1);  // flag wins over file
  CHECK(meta["params"]["N"] == 5);     // file applies where no flag is given
  CHECK(meta["seed"] == 3);
}
