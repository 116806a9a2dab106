// sizevix: batch CLI for fitting, simulating and checking the
// VIX-normalized size-CAPM market model.
//
// Every command writes its primary output plus a `<out>.meta.json` sidecar
// holding the command, the fully resolved parameters and the seed, so any
// run can be reproduced byte-for-byte.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sizevix/csv.hpp"
#include "sizevix/data_ingest.hpp"
#include "sizevix/extremes.hpp"
#include "sizevix/market_sim.hpp"
#include "sizevix/regression.hpp"
#include "sizevix/stability.hpp"
#include "sizevix/version.hpp"
#include "sizevix/volatility.hpp"

using json = nlohmann::json;
using namespace sizevix;

namespace {

struct RunSettings {
  ModelParams model = reference_params();
  std::size_t t_len = 400;
  std::uint64_t seed = 1;
  std::optional<double> lnv0;
  std::size_t samples = 1000000;
  std::size_t burn_in = 200;

  double resolved_lnv0() const { return lnv0 ? *lnv0 : default_lnv0(model.units); }
};

[[noreturn]] void usage_error(const std::string& message) {
  throw CLI::ValidationError("config", message);
}

// Applies one flat key=value setting; the key set mirrors the CLI flags.
void apply_key(RunSettings& run, const std::string& key, const std::string& value) {
  const auto num = [&] { return parse_double(value, "config key " + key); };
  const auto integer = [&] {
    const double v = parse_double(value, "config key " + key);
    if (v < 0 || v != std::floor(v)) usage_error("config key " + key + " must be a nonnegative integer");
    return static_cast<std::uint64_t>(v);
  };
  auto& m = run.model;
  const auto vg = [&]() -> VarianceGammaParams& {
    if (!std::holds_alternative<VarianceGammaParams>(m.vix.innovation))
      m.vix.innovation = VarianceGammaParams{};
    return std::get<VarianceGammaParams>(m.vix.innovation);
  };

  if (key == "alpha") m.vix.alpha = num();
  else if (key == "beta") m.vix.beta = num();
  else if (key == "innovation") {
    if (value == "vg") vg();
    else if (value == "gaussian") m.vix.innovation = GaussianInnovation{0.15};
    else usage_error("innovation must be 'vg' or 'gaussian'");
  } else if (key == "c0") vg().c0 = num();
  else if (key == "c1") vg().c1 = num();
  else if (key == "c2") vg().c2 = num();
  else if (key == "gamma_shape") vg().gamma_shape = num();
  else if (key == "sigma_w") m.vix.innovation = GaussianInnovation{num()};
  else if (key == "g") m.bench_return_mean = num();
  else if (key == "G") m.bench_premium_mean = num();
  else if (key == "z_sigma") m.z_sigma = num();
  else if (key == "rho") m.vix_return_corr = num();
  else if (key == "a") m.ret_alpha_slope = num();
  else if (key == "b") m.ret_beta_slope = num();
  else if (key == "c") m.ret_beta_slope = -num();
  else if (key == "m") m.ret_intercept = num();
  else if (key == "A") m.prem_alpha_slope = num();
  else if (key == "B") m.prem_beta_slope = num();
  else if (key == "M") m.prem_intercept = num();
  else if (key == "sigma_eps") m.eps_sd = num();
  else if (key == "sigma_delta") m.delta_sd = num();
  else if (key == "N") m.n_portfolios = integer();
  else if (key == "T") run.t_len = integer();
  else if (key == "seed") run.seed = integer();
  else if (key == "lnv0") run.lnv0 = num();
  else if (key == "samples") run.samples = integer();
  else if (key == "burn_in") run.burn_in = integer();
  else if (key == "vix_units") {
    if (value == "index") m.units = VixUnits::Index;
    else if (value == "monthly") m.units = VixUnits::Monthly;
    else usage_error("vix_units must be 'index' or 'monthly'");
  } else {
    usage_error("unknown config key '" + key + "'");
  }
}

void load_params_file(RunSettings& run, const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open params file " + file.string());
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    while (!line.empty() && (line.back() == ' ' || line.back() == '\r' || line.back() == '\t'))
      line.pop_back();
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      usage_error(file.string() + ":" + std::to_string(lineno) + ": expected key=value");
    std::string key = line.substr(start, eq - start);
    while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
    std::string value = line.substr(eq + 1);
    const auto vstart = value.find_first_not_of(" \t");
    value = vstart == std::string::npos ? "" : value.substr(vstart);
    apply_key(run, key, value);
  }
}

json params_json(const RunSettings& run) {
  json p;
  p["alpha"] = run.model.vix.alpha;
  p["beta"] = run.model.vix.beta;
  if (const auto* vg = std::get_if<VarianceGammaParams>(&run.model.vix.innovation)) {
    p["innovation"] = "vg";
    p["c0"] = vg->c0;
    p["c1"] = vg->c1;
    p["c2"] = vg->c2;
    p["gamma_shape"] = vg->gamma_shape;
  } else {
    p["innovation"] = "gaussian";
    p["sigma_w"] = std::get<GaussianInnovation>(run.model.vix.innovation).sigma;
  }
  p["vix_units"] = run.model.units == VixUnits::Index ? "index" : "monthly";
  p["g"] = run.model.bench_return_mean;
  p["G"] = run.model.bench_premium_mean;
  p["z_sigma"] = run.model.z_sigma;
  p["rho"] = run.model.vix_return_corr;
  p["a"] = run.model.ret_alpha_slope;
  p["b"] = run.model.ret_beta_slope;
  p["m"] = run.model.ret_intercept;
  p["A"] = run.model.prem_alpha_slope;
  p["B"] = run.model.prem_beta_slope;
  p["M"] = run.model.prem_intercept;
  p["sigma_eps"] = run.model.eps_sd;
  p["sigma_delta"] = run.model.delta_sd;
  p["N"] = run.model.n_portfolios;
  p["T"] = run.t_len;
  p["lnv0"] = run.resolved_lnv0();
  p["samples"] = run.samples;
  p["burn_in"] = run.burn_in;
  return p;
}

void write_meta(const std::filesystem::path& out, const std::string& command,
                std::uint64_t seed, const json& params, const std::vector<std::string>& outputs,
                const std::string& rerun) {
  json meta;
  meta["command"] = command;
  meta["version"] = kVersion;
  meta["seed"] = seed;
  meta["params"] = params;
  meta["outputs"] = outputs;
  meta["rerun"] = rerun;
  write_text_file(out.string() + ".meta.json", meta.dump(2) + "\n");
}

std::string curve_csv(const CurvePoints& curve) {
  std::string out = "x,y\n";
  for (std::size_t i = 0; i < curve.size(); ++i)
    out += format_double(curve.x[i]) + "," + format_double(curve.y[i]) + "\n";
  return out;
}

// --- fit ------------------------------------------------------------------

json ar1_json(const Ar1Fit& fit) {
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  const double n = static_cast<double>(fit.innovations.size());
  for (double w : fit.innovations) {
    m2 += w * w;
    m3 += w * w * w;
    m4 += w * w * w * w;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  json j;
  j["alpha"] = fit.alpha;
  j["beta"] = fit.beta;
  j["beta_ci95"] = {fit.beta_ci95.first, fit.beta_ci95.second};
  j["innovation_variance"] = m2;
  j["innovation_skewness"] = m3 / std::pow(m2, 1.5);
  j["innovation_kurtosis"] = m4 / (m2 * m2);
  j["n"] = fit.innovations.size();
  return j;
}

json capm_row_json(const SizeCapmFit& f) {
  json j;
  j["decile"] = f.decile;
  j["kind"] = f.kind == FitKind::Returns ? "returns" : "premia";
  j["m"] = f.intercept;
  j["a"] = f.alpha_slope;
  j["b"] = f.beta_slope;
  j["s2"] = f.s2;
  j["s2_ci95"] = {f.s2_ci95.first, f.s2_ci95.second};
  j["ljung_box_p"] = f.ljung_box_p;
  j["jarque_bera_p"] = f.jarque_bera_p;
  j["p_m"] = f.t_pvalues[0];
  j["p_a"] = f.t_pvalues[1];
  j["p_b"] = f.t_pvalues[2];
  return j;
}

std::string capm_table_csv(const std::vector<SizeCapmFit>& rows) {
  std::string out =
      "decile,kind,m,a,b,s2,s2_ci_lo,s2_ci_hi,ljung_box_p,jarque_bera_p,p_m,p_a,p_b\n";
  for (const auto& f : rows) {
    out += std::to_string(f.decile);
    out += f.kind == FitKind::Returns ? ",returns," : ",premia,";
    out += format_double(f.intercept) + "," + format_double(f.alpha_slope) + "," +
           format_double(f.beta_slope) + "," + format_double(f.s2) + "," +
           format_double(f.s2_ci95.first) + "," + format_double(f.s2_ci95.second) + "," +
           format_double(f.ljung_box_p) + "," + format_double(f.jarque_bera_p) + "," +
           format_double(f.t_pvalues[0]) + "," + format_double(f.t_pvalues[1]) + "," +
           format_double(f.t_pvalues[2]) + "\n";
  }
  return out;
}

int run_fit(const std::string& deciles_dir, const std::string& vix_file,
            const std::string& rf_file, const std::string& out, const std::string& format) {
  if (deciles_dir.empty() && vix_file.empty())
    usage_error("fit needs --deciles-dir (with --vix and --rf) or --vix alone");

  json result;
  std::string csv_text;
  if (!deciles_dir.empty()) {
    if (vix_file.empty() || rf_file.empty())
      usage_error("fit --deciles-dir also needs --vix and --rf");
    const DecilePanel deciles = load_french_deciles(deciles_dir);
    const MonthlySeries vix = load_fred_series(vix_file, "vix");
    const MonthlySeries rf = load_fred_series(rf_file, "riskfree");
    const MonthlyPanel panel = assemble_panel(deciles, vix, rf);
    const ModelDataset ds = build_dataset(panel);

    std::vector<SizeCapmFit> rows;
    for (int d = 1; d <= 9; ++d) rows.push_back(fit_returns_model(ds, d));
    for (int d = 1; d <= 9; ++d) rows.push_back(fit_premia_model(ds, d));
    result["returns"] = json::array();
    result["premia"] = json::array();
    for (const auto& f : rows)
      result[f.kind == FitKind::Returns ? "returns" : "premia"].push_back(capm_row_json(f));
    result["vix_ar1"] = ar1_json(fit_log_ar1(panel.vix));
    result["range"] = {panel.range.first.str(), panel.range.second.str()};
    csv_text = capm_table_csv(rows);
  } else {
    const MonthlySeries vix = load_fred_series(vix_file, "vix");
    result["vix_ar1"] = ar1_json(fit_log_ar1(vix));
  }

  const std::string text =
      (format == "csv" && !csv_text.empty()) ? csv_text : result.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
  } else {
    write_text_file(out, text);
    json params;
    params["deciles_dir"] = deciles_dir;
    params["vix"] = vix_file;
    params["rf"] = rf_file;
    params["format"] = format;
    write_meta(out, "fit", 0, params, {out},
               "sizevix fit --deciles-dir " + deciles_dir + " --vix " + vix_file + " --rf " +
                   rf_file + " --format " + format + " --out " + out);
  }
  return 0;
}

// --- simulate ---------------------------------------------------------------

std::string paths_csv(const SimPaths& paths) {
  const std::size_t t_len = paths.t_len();
  const std::size_t n = paths.c.size();
  std::string out = "t,v,r0";
  for (std::size_t k = 1; k <= n; ++k) out += ",c" + std::to_string(k);
  out += "\n";
  for (std::size_t t = 0; t <= t_len; ++t) {
    out += std::to_string(t);
    if (t < t_len) {
      out += "," + format_double(paths.v[t]) + "," + format_double(paths.r0[t]);
    } else {
      out += ",,";  // the final row holds only the terminal size state
    }
    for (std::size_t k = 0; k < n; ++k) out += "," + format_double(paths.c[k][t]);
    out += "\n";
  }
  return out;
}

int run_simulate(const RunSettings& run, const std::string& out, const std::string& emit_paths,
                 const std::string& rerun) {
  const SimPaths paths =
      simulate_market(run.model, run.t_len, std::vector<double>(run.model.n_portfolios, 0.0),
                      run.resolved_lnv0(), run.seed);
  std::vector<double> final_c(run.model.n_portfolios);
  for (std::size_t k = 0; k < final_c.size(); ++k) final_c[k] = paths.c[k][run.t_len];
  write_text_file(out, curve_csv(capital_curve(final_c)));
  std::vector<std::string> outputs = {out};
  if (!emit_paths.empty()) {
    write_text_file(emit_paths, paths_csv(paths));
    outputs.push_back(emit_paths);
  }
  write_meta(out, "simulate", run.seed, params_json(run), outputs, rerun);
  return 0;
}

// --- stability ---------------------------------------------------------------

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Stable: return "stable";
    case Verdict::Unstable: return "unstable";
    default: return "inconclusive";
  }
}

int run_stability_point(const RunSettings& run, const std::string& out,
                        const std::string& rerun) {
  const StabilityReport r = estimate_log_contraction(run.model, run.samples, run.burn_in, run.seed);
  json j;
  j["log_moment"] = r.log_moment;
  j["std_error"] = r.std_error;
  j["n_samples"] = r.n_samples;
  j["first_order"] = r.first_order;
  j["verdict"] = verdict_name(r.verdict);
  j["mean_v"] = r.mean_v;
  j["mean_r0"] = r.mean_r0;
  j["zero_redraws"] = r.zero_redraws;
  j["seed"] = run.seed;
  const std::string text = j.dump(2) + "\n";
  std::cout << text;
  if (!out.empty()) {
    write_text_file(out, text);
    write_meta(out, "stability", run.seed, params_json(run), {out}, rerun);
  }
  return 0;
}

int run_stability_region(const RunSettings& run, double mu_min, double mu_max, double rho_min,
                         double rho_max, std::size_t grid_n, std::size_t samples_per_cell,
                         const std::string& out, const std::string& boundary_out,
                         const std::string& rerun) {
  const RegionGrid grid =
      stability_region({mu_min, mu_max}, {rho_min, rho_max}, grid_n, samples_per_cell, run.seed);
  std::string text = "mu,rho,value\n";
  for (std::size_t j = 0; j < grid.rho_axis.size(); ++j)
    for (std::size_t i = 0; i < grid.mu_axis.size(); ++i)
      text += format_double(grid.mu_axis[i]) + "," + format_double(grid.rho_axis[j]) + "," +
              format_double(grid.at(i, j)) + "\n";
  write_text_file(out, text);
  std::vector<std::string> outputs = {out};
  if (!boundary_out.empty()) {
    std::string btext = "mu,rho\n";
    for (const auto& [mu, rho] : grid.boundary)
      btext += format_double(mu) + "," + format_double(rho) + "\n";
    write_text_file(boundary_out, btext);
    outputs.push_back(boundary_out);
  }
  json params;
  params["mu_range"] = {mu_min, mu_max};
  params["rho_range"] = {rho_min, rho_max};
  params["grid_n"] = grid_n;
  params["samples_per_cell"] = samples_per_cell;
  write_meta(out, "stability --region", run.seed, params, outputs, rerun);
  return 0;
}

// --- curve -------------------------------------------------------------------

int run_curve(const RunSettings& run, const std::string& paths_file, std::int64_t time_index,
              bool standardize, std::size_t terms, const std::string& out,
              const std::string& rerun) {
  const auto rows = read_csv(paths_file);
  if (rows.size() < 3) throw std::runtime_error(paths_file + ": not a paths file");
  const auto& header = rows[0];
  if (header.size() < 4 || header[0] != "t" || header[1] != "v" || header[2] != "r0")
    throw std::runtime_error(paths_file + ": expected header t,v,r0,c1,...");
  const std::size_t n = header.size() - 3;
  const std::size_t t_len = rows.size() - 2;  // total rows: T path rows + terminal state
  std::vector<double> v(t_len), z(t_len);
  for (std::size_t t = 0; t < t_len; ++t) {
    const auto& row = rows[1 + t];
    if (row.size() != header.size())
      throw std::runtime_error(paths_file + ": ragged row " + std::to_string(t + 2));
    v[t] = parse_double(row[1], "paths v");
    const double r0 = parse_double(row[2], "paths r0");
    z[t] = r0 / v[t] - run.model.bench_return_mean;
  }
  const std::size_t state = time_index < 0 ? t_len : static_cast<std::size_t>(time_index);
  if (state > t_len) throw std::runtime_error("curve: --time beyond the stored horizon");
  std::vector<double> c(n);
  for (std::size_t k = 0; k < n; ++k)
    c[k] = parse_double(rows[1 + state][3 + k], "paths c");

  if (standardize) {
    if (state < 1) throw std::runtime_error("curve: --standardize needs time >= 1");
    const std::size_t span = std::min(terms, state);
    const auto cm = conditional_moments(std::span(v).first(state), std::span(z).first(state),
                                        run.model, span);
    c = standardize_curve(c, cm);
  }
  write_text_file(out, curve_csv(capital_curve(c)));
  write_meta(out, "curve", run.seed, params_json(run), {out}, rerun);
  return 0;
}

// --- extremes ------------------------------------------------------------------

std::filesystem::path reference_path(const std::filesystem::path& out) {
  std::filesystem::path p = out;
  p.replace_extension(".ref" + out.extension().string());
  return p;
}

int run_extremes(const std::string& mode, std::size_t m, std::size_t n_total,
                 std::uint64_t seed, const std::string& out, const std::string& rerun) {
  std::vector<std::string> outputs = {out};
  if (mode == "upper") {
    const CurvePoints curve = upper_curve(simulate_arrivals(m, seed));
    write_text_file(out, curve_csv(curve));
    CurvePoints ref;
    ref.x = curve.x;
    ref.y.resize(curve.size());
    for (std::size_t i = 0; i < curve.size(); ++i) ref.y[i] = 0.0 - curve.x[i] + 0.0;
    write_text_file(reference_path(out), curve_csv(ref));
    outputs.push_back(reference_path(out).string());
  } else if (mode == "lower") {
    const CurvePoints curve = lower_curve(simulate_arrivals(m, seed), n_total);
    write_text_file(out, curve_csv(curve));
    CurvePoints ref;
    ref.x = curve.x;
    ref.y.resize(curve.size());
    for (std::size_t i = 0; i < curve.size(); ++i)
      ref.y[i] = std::log(static_cast<double>(n_total) + 1.0 - std::exp(curve.x[i]));
    write_text_file(reference_path(out), curve_csv(ref));
    outputs.push_back(reference_path(out).string());
  } else {  // normal-curve
    write_text_file(out, curve_csv(normal_market_curve(n_total, seed)));
  }
  json params;
  params["mode"] = mode;
  params["m"] = m;
  params["N"] = n_total;
  write_meta(out, "extremes", seed, params, outputs, rerun);
  return 0;
}

std::string quote_rerun(int argc, char** argv) {
  std::string cmd = "sizevix";
  for (int i = 1; i < argc; ++i) cmd += std::string(" ") + argv[i];
  return cmd;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"VIX-normalized size-CAPM model: fitting, simulation, stability and curve tools"};
  app.require_subcommand(1);
  const std::string rerun = quote_rerun(argc, argv);

  RunSettings run;
  std::string params_file;
  std::string out, format = "json";

  // fit
  auto* fit = app.add_subcommand("fit", "Fit the size-CAPM regressions and the volatility AR(1)");
  std::string deciles_dir, vix_file, rf_file;
  fit->add_option("--deciles-dir", deciles_dir, "Directory with sizes/price_returns/total_returns CSVs");
  fit->add_option("--vix", vix_file, "Volatility index CSV (DATE,VALUE)");
  fit->add_option("--rf", rf_file, "Treasury rate CSV (DATE,VALUE)");
  fit->add_option("--out", out, "Output file (stdout when omitted)");
  fit->add_option("--format", format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->envname("SIZEVIX_FORMAT");

  // shared model-parameter flags for the generative commands
  const auto add_model_flags = [&](CLI::App* cmd) {
    cmd->add_option("--params", params_file, "Flat key=value parameter file");
    for (const char* key : {"alpha", "beta", "c0", "c1", "c2", "gamma_shape", "sigma_w", "g",
                            "G", "z_sigma", "rho", "a", "b", "c", "m", "A", "B", "M",
                            "sigma_eps", "sigma_delta", "lnv0"}) {
      cmd->add_option_function<double>(
          std::string("--") + key,
          [&run, key = std::string(key)](double v) { apply_key(run, key, format_double(v)); },
          "Model parameter " + std::string(key));
    }
    cmd->add_option_function<std::string>(
        "--innovation", [&run](const std::string& v) { apply_key(run, "innovation", v); },
        "vg | gaussian");
    cmd->add_option_function<std::string>(
        "--vix-units", [&run](const std::string& v) { apply_key(run, "vix_units", v); },
        "index | monthly");
    cmd->add_option_function<std::uint64_t>(
        "--seed", [&run](std::uint64_t v) { run.seed = v; }, "RNG seed")
        ->envname("SIZEVIX_SEED");
  };

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Simulate the market and emit the ranked size curve");
  add_model_flags(simulate);
  simulate->add_option_function<std::uint64_t>(
      "--T", [&run](std::uint64_t v) { run.t_len = v; }, "Time steps");
  simulate->add_option_function<std::uint64_t>(
      "--N", [&run](std::uint64_t v) { run.model.n_portfolios = v; }, "Portfolio count");
  std::string emit_paths;
  simulate->add_option("--emit-paths", emit_paths, "Also dump V, R0 and the size matrix");
  simulate->add_option("--out", out, "Curve CSV path")->required();

  // stability
  auto* stability = app.add_subcommand("stability", "Log-contraction checks and the gaussian stability region");
  add_model_flags(stability);
  bool region = false;
  double mu_min = 0.0, mu_max = 3.0, rho_min = 0.0, rho_max = 3.0;
  std::size_t grid_n = 61, samples_per_cell = 100000;
  std::string boundary_out;
  stability->add_flag("--region", region, "Map the gaussian stability region instead");
  stability->add_option_function<std::uint64_t>(
      "--samples", [&run](std::uint64_t v) { run.samples = v; }, "Monte Carlo samples");
  stability->add_option_function<std::uint64_t>(
      "--burn-in", [&run](std::uint64_t v) { run.burn_in = v; }, "Burn-in steps");
  stability->add_option("--mu-min", mu_min);
  stability->add_option("--mu-max", mu_max);
  stability->add_option("--rho-min", rho_min);
  stability->add_option("--rho-max", rho_max);
  stability->add_option("--grid", grid_n, "Grid points per axis");
  stability->add_option("--samples-per-cell", samples_per_cell);
  stability->add_option("--boundary-out", boundary_out, "Also write the zero boundary CSV");
  stability->add_option("--out", out, "Output path (region: required; point: optional)");

  // curve
  auto* curve = app.add_subcommand("curve", "Rank (and optionally standardize) a stored simulation state");
  add_model_flags(curve);
  std::string curve_paths;
  std::int64_t time_index = -1;
  bool standardize = false;
  std::size_t terms = 200;
  curve->add_option("--paths", curve_paths, "paths CSV from simulate --emit-paths")->required();
  curve->add_option("--time", time_index, "State index to rank (default: final)");
  curve->add_flag("--standardize", standardize, "Standardize by the conditional moments");
  curve->add_option("--terms", terms, "Truncation terms for the conditional moments");
  curve->add_option("--out", out, "Curve CSV path")->required();

  // extremes
  auto* extremes = app.add_subcommand("extremes", "Poisson curve ends and the standard normal market curve");
  bool upper = false, lower = false, normal_curve_mode = false;
  std::size_t m_arrivals = 100, n_total = 500;
  extremes->add_flag("--upper", upper, "Top-end curve (ln k, -ln tau_k)");
  extremes->add_flag("--lower", lower, "Bottom-end curve (ln(N+1-k), ln tau_k)");
  extremes->add_flag("--normal-curve", normal_curve_mode, "Ranked standard normal sample");
  extremes->add_option("-m,--arrivals", m_arrivals, "Arrival count");
  extremes->add_option("-N,--total", n_total, "Sample size N");
  extremes->add_option_function<std::uint64_t>(
      "--seed", [&run](std::uint64_t v) { run.seed = v; }, "RNG seed")
      ->envname("SIZEVIX_SEED");
  extremes->add_option("--out", out, "Curve CSV path")->required();

  try {
    // Parse the subcommand's --params file before its explicit flags so the
    // command line takes precedence; CLI11 fires option callbacks in parse
    // order, so pre-scan for --params first.
    for (int i = 1; i + 1 < argc; ++i)
      if (std::string(argv[i]) == "--params") load_params_file(run, argv[i + 1]);
    app.parse(argc, argv);

    if (fit->parsed()) return run_fit(deciles_dir, vix_file, rf_file, out, format);
    if (simulate->parsed()) return run_simulate(run, out, emit_paths, rerun);
    if (stability->parsed()) {
      if (region) {
        if (out.empty()) usage_error("stability --region needs --out");
        return run_stability_region(run, mu_min, mu_max, rho_min, rho_max, grid_n,
                                    samples_per_cell, out, boundary_out, rerun);
      }
      return run_stability_point(run, out, rerun);
    }
    if (curve->parsed())
      return run_curve(run, curve_paths, time_index, standardize, terms, out, rerun);
    if (extremes->parsed()) {
      const int modes = int(upper) + int(lower) + int(normal_curve_mode);
      if (modes != 1) usage_error("extremes needs exactly one of --upper, --lower, --normal-curve");
      const std::string mode = upper ? "upper" : lower ? "lower" : "normal-curve";
      return run_extremes(mode, m_arrivals, n_total, run.seed, out, rerun);
    }
    return 0;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
