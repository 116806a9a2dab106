// Python bindings for the core operations: model fitting, market
// simulation, stability checks and curve-end asymptotics.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "sizevix/data_ingest.hpp"
#include "sizevix/extremes.hpp"
#include "sizevix/market_sim.hpp"
#include "sizevix/regression.hpp"
#include "sizevix/stability.hpp"
#include "sizevix/version.hpp"
#include "sizevix/volatility.hpp"

namespace py = pybind11;
using namespace sizevix;

PYBIND11_MODULE(_core, m) {
  m.doc() = "VIX-normalized size-CAPM market model";
  m.attr("__version__") = kVersion;

  // -- shared types ---------------------------------------------------------
  py::class_<MonthKey>(m, "MonthKey")
      .def(py::init<int, int>(), py::arg("year"), py::arg("month"))
      .def_readwrite("year", &MonthKey::year)
      .def_readwrite("month", &MonthKey::month)
      .def("__repr__", [](const MonthKey& k) { return "MonthKey(" + k.str() + ")"; })
      .def("__eq__", [](const MonthKey& a, const MonthKey& b) { return a == b; })
      .def("__lt__", [](const MonthKey& a, const MonthKey& b) { return a < b; });

  py::class_<MonthlySeries>(m, "MonthlySeries")
      .def(py::init<>())
      .def_readwrite("months", &MonthlySeries::months)
      .def_readwrite("values", &MonthlySeries::values)
      .def("__len__", &MonthlySeries::size);

  py::class_<CurvePoints>(m, "CurvePoints")
      .def_readonly("x", &CurvePoints::x)
      .def_readonly("y", &CurvePoints::y)
      .def("__len__", &CurvePoints::size);

  // -- data ingest ------------------------------------------------------------
  py::class_<DecilePanel>(m, "DecilePanel")
      .def_readwrite("size", &DecilePanel::size)
      .def_readwrite("price_return", &DecilePanel::price_return)
      .def_readwrite("total_return", &DecilePanel::total_return)
      .def("range", &DecilePanel::range);

  py::class_<MonthlyPanel>(m, "MonthlyPanel")
      .def_readonly("deciles", &MonthlyPanel::deciles)
      .def_readonly("vix", &MonthlyPanel::vix)
      .def_readonly("riskfree", &MonthlyPanel::riskfree)
      .def_readonly("range", &MonthlyPanel::range);

  py::class_<ModelDataset>(m, "ModelDataset")
      .def_readonly("months", &ModelDataset::months)
      .def_readonly("vol", &ModelDataset::vol)
      .def_readonly("bench_return", &ModelDataset::bench_return)
      .def_readonly("bench_premium", &ModelDataset::bench_premium)
      .def_readonly("ret", &ModelDataset::ret)
      .def_readonly("premium", &ModelDataset::premium)
      .def_readonly("rel_size", &ModelDataset::rel_size)
      .def("n_obs", &ModelDataset::n_obs);

  m.def("load_french_deciles", &load_french_deciles, py::arg("dir"));
  m.def("save_french_deciles", &save_french_deciles, py::arg("panel"), py::arg("dir"));
  m.def("load_fred_series", &load_fred_series, py::arg("file"), py::arg("name"));
  m.def("assemble_panel", &assemble_panel, py::arg("deciles"), py::arg("vix"),
        py::arg("riskfree"));
  m.def("build_dataset", &build_dataset, py::arg("panel"));

  // -- regression ---------------------------------------------------------------
  py::class_<OlsFit>(m, "OlsFit")
      .def_readonly("coefficients", &OlsFit::coefficients)
      .def_readonly("std_errors", &OlsFit::std_errors)
      .def_readonly("t_pvalues", &OlsFit::t_pvalues)
      .def_readonly("residuals", &OlsFit::residuals)
      .def_readonly("s2", &OlsFit::s2)
      .def_readonly("s2_ci95", &OlsFit::s2_ci95)
      .def_readonly("n", &OlsFit::n)
      .def_readonly("p", &OlsFit::p);

  py::enum_<FitKind>(m, "FitKind").value("Returns", FitKind::Returns).value("Premia", FitKind::Premia);

  py::class_<SizeCapmFit>(m, "SizeCapmFit")
      .def_readonly("decile", &SizeCapmFit::decile)
      .def_readonly("kind", &SizeCapmFit::kind)
      .def_readonly("intercept", &SizeCapmFit::intercept)
      .def_readonly("alpha_slope", &SizeCapmFit::alpha_slope)
      .def_readonly("beta_slope", &SizeCapmFit::beta_slope)
      .def_readonly("s2", &SizeCapmFit::s2)
      .def_readonly("s2_ci95", &SizeCapmFit::s2_ci95)
      .def_readonly("ljung_box_p", &SizeCapmFit::ljung_box_p)
      .def_readonly("jarque_bera_p", &SizeCapmFit::jarque_bera_p)
      .def_readonly("t_pvalues", &SizeCapmFit::t_pvalues)
      .def_readonly("residuals", &SizeCapmFit::residuals);

  m.def("ols_fit", &ols_fit, py::arg("columns"), py::arg("y"));
  m.def("ljung_box_abs", &ljung_box_abs, py::arg("residuals"), py::arg("lags") = 10);
  m.def("jarque_bera", &jarque_bera, py::arg("residuals"));
  m.def("fit_returns_model", &fit_returns_model, py::arg("dataset"), py::arg("decile"));
  m.def("fit_premia_model", &fit_premia_model, py::arg("dataset"), py::arg("decile"));

  // -- volatility -----------------------------------------------------------------
  py::class_<Ar1Fit>(m, "Ar1Fit")
      .def_readonly("alpha", &Ar1Fit::alpha)
      .def_readonly("beta", &Ar1Fit::beta)
      .def_readonly("innovations", &Ar1Fit::innovations)
      .def_readonly("beta_ci95", &Ar1Fit::beta_ci95);

  py::class_<VarianceGammaParams>(m, "VarianceGammaParams")
      .def(py::init<double, double, double, double>(), py::arg("c0"), py::arg("c1"),
           py::arg("c2"), py::arg("gamma_shape"))
      .def_readwrite("c0", &VarianceGammaParams::c0)
      .def_readwrite("c1", &VarianceGammaParams::c1)
      .def_readwrite("c2", &VarianceGammaParams::c2)
      .def_readwrite("gamma_shape", &VarianceGammaParams::gamma_shape);

  py::class_<GaussianInnovation>(m, "GaussianInnovation")
      .def(py::init<double>(), py::arg("sigma"))
      .def_readwrite("sigma", &GaussianInnovation::sigma);

  py::class_<VixModel>(m, "VixModel")
      .def(py::init<>())
      .def(py::init([](double alpha, double beta, const VixInnovation& innovation) {
             return VixModel{alpha, beta, innovation};
           }),
           py::arg("alpha"), py::arg("beta"), py::arg("innovation"))
      .def_readwrite("alpha", &VixModel::alpha)
      .def_readwrite("beta", &VixModel::beta)
      .def_readwrite("innovation", &VixModel::innovation);

  m.def(
      "fit_log_ar1",
      [](const std::vector<double>& values) {
        return fit_log_ar1(std::span<const double>(values));
      },
      py::arg("values"));
  m.def(
      "sample_vg",
      [](const VarianceGammaParams& params, std::size_t n, std::uint64_t seed) {
        Rng rng(seed);
        std::vector<double> out(n);
        for (double& w : out) w = sample_vg(params, rng);
        return out;
      },
      py::arg("params"), py::arg("n"), py::arg("seed"));
  m.def(
      "simulate_log_vix",
      [](const VixModel& model, std::size_t t_len, double lnv0, std::uint64_t seed) {
        Rng rng(seed);
        return simulate_log_vix(model, t_len, lnv0, rng);
      },
      py::arg("model"), py::arg("t_len"), py::arg("lnv0"), py::arg("seed"));

  py::class_<StationaryMoment>(m, "StationaryMoment")
      .def_readonly("value", &StationaryMoment::value)
      .def_readonly("terms_used", &StationaryMoment::terms_used)
      .def_readonly("log_tail_bound", &StationaryMoment::log_tail_bound);
  m.def("stationary_moment", &stationary_moment, py::arg("model"), py::arg("u"),
        py::arg("max_terms") = 500);

  // -- market simulation --------------------------------------------------------
  py::enum_<VixUnits>(m, "VixUnits")
      .value("Index", VixUnits::Index)
      .value("Monthly", VixUnits::Monthly);

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init<>())
      .def_readwrite("vix", &ModelParams::vix)
      .def_readwrite("units", &ModelParams::units)
      .def_readwrite("bench_return_mean", &ModelParams::bench_return_mean)
      .def_readwrite("bench_premium_mean", &ModelParams::bench_premium_mean)
      .def_readwrite("z_sigma", &ModelParams::z_sigma)
      .def_readwrite("vix_return_corr", &ModelParams::vix_return_corr)
      .def_readwrite("ret_intercept", &ModelParams::ret_intercept)
      .def_readwrite("ret_alpha_slope", &ModelParams::ret_alpha_slope)
      .def_readwrite("ret_beta_slope", &ModelParams::ret_beta_slope)
      .def_readwrite("prem_intercept", &ModelParams::prem_intercept)
      .def_readwrite("prem_alpha_slope", &ModelParams::prem_alpha_slope)
      .def_readwrite("prem_beta_slope", &ModelParams::prem_beta_slope)
      .def_readwrite("eps_sd", &ModelParams::eps_sd)
      .def_readwrite("delta_sd", &ModelParams::delta_sd)
      .def_readwrite("n_portfolios", &ModelParams::n_portfolios);

  m.def("reference_params", &reference_params);
  m.def("with_units", &with_units, py::arg("params"), py::arg("target"));
  m.def("default_lnv0", &default_lnv0, py::arg("units"));

  py::class_<SimPaths>(m, "SimPaths")
      .def_readonly("v", &SimPaths::v)
      .def_readonly("r0", &SimPaths::r0)
      .def_readonly("z", &SimPaths::z)
      .def_readonly("c", &SimPaths::c)
      .def_readonly("eps", &SimPaths::eps)
      .def("t_len", &SimPaths::t_len);

  py::class_<PremiaPaths>(m, "PremiaPaths")
      .def_readonly("p0", &PremiaPaths::p0)
      .def_readonly("p", &PremiaPaths::p);

  m.def("simulate_market", &simulate_market, py::arg("params"), py::arg("t_len"), py::arg("c0"),
        py::arg("lnv0"), py::arg("seed"), py::arg("keep_innovations") = false,
        py::call_guard<py::gil_scoped_release>());
  m.def("simulate_premia", &simulate_premia, py::arg("paths"), py::arg("params"), py::arg("seed"),
        py::arg("share_benchmark_noise") = false, py::call_guard<py::gil_scoped_release>());
  m.def("market_weights", &market_weights, py::arg("rel_sizes"), py::arg("s0"));
  m.def("capital_curve", &capital_curve, py::arg("rel_sizes"));

  py::class_<ConditionalMoments>(m, "ConditionalMoments")
      .def_readonly("cond_mean", &ConditionalMoments::cond_mean)
      .def_readonly("cond_sd", &ConditionalMoments::cond_sd)
      .def_readonly("truncation_terms", &ConditionalMoments::truncation_terms);
  m.def(
      "conditional_moments",
      [](const std::vector<double>& v, const std::vector<double>& z, const ModelParams& params,
         std::size_t terms) {
        return conditional_moments(std::span<const double>(v), std::span<const double>(z), params,
                                   terms);
      },
      py::arg("v_path"), py::arg("z_path"), py::arg("params"), py::arg("terms"));
  m.def("standardize_curve", &standardize_curve, py::arg("rel_sizes"), py::arg("moments"));

  // -- stability -------------------------------------------------------------------
  py::enum_<Verdict>(m, "Verdict")
      .value("Stable", Verdict::Stable)
      .value("Unstable", Verdict::Unstable)
      .value("Inconclusive", Verdict::Inconclusive);

  py::class_<StabilityReport>(m, "StabilityReport")
      .def_readonly("log_moment", &StabilityReport::log_moment)
      .def_readonly("std_error", &StabilityReport::std_error)
      .def_readonly("n_samples", &StabilityReport::n_samples)
      .def_readonly("first_order", &StabilityReport::first_order)
      .def_readonly("verdict", &StabilityReport::verdict)
      .def_readonly("mean_v", &StabilityReport::mean_v)
      .def_readonly("mean_r0", &StabilityReport::mean_r0)
      .def_readonly("zero_redraws", &StabilityReport::zero_redraws);

  py::class_<McEstimate>(m, "McEstimate")
      .def_readonly("estimate", &McEstimate::estimate)
      .def_readonly("std_error", &McEstimate::std_error);

  py::class_<RegionGrid>(m, "RegionGrid")
      .def_readonly("mu_axis", &RegionGrid::mu_axis)
      .def_readonly("rho_axis", &RegionGrid::rho_axis)
      .def_readonly("values", &RegionGrid::values)
      .def_readonly("boundary", &RegionGrid::boundary)
      .def("at", &RegionGrid::at, py::arg("i_mu"), py::arg("j_rho"));

  m.def("estimate_log_contraction", &estimate_log_contraction, py::arg("params"),
        py::arg("n"), py::arg("burn_in"), py::arg("seed"),
        py::call_guard<py::gil_scoped_release>());
  m.def("gaussian_log_moment", &gaussian_log_moment, py::arg("mu"), py::arg("rho"), py::arg("n"),
        py::arg("seed"), py::call_guard<py::gil_scoped_release>());
  m.def("gaussian_log_moment_quadrature", &gaussian_log_moment_quadrature, py::arg("mu"),
        py::arg("rho"));
  m.def("stability_region", &stability_region, py::arg("mu_range"), py::arg("rho_range"),
        py::arg("grid_n"), py::arg("samples_per_cell"), py::arg("seed"),
        py::call_guard<py::gil_scoped_release>());

  // -- extremes ---------------------------------------------------------------------
  py::class_<PoissonArrivals>(m, "PoissonArrivals")
      .def(py::init([](std::vector<double> tau) { return PoissonArrivals{std::move(tau)}; }),
           py::arg("tau"))
      .def_readonly("tau", &PoissonArrivals::tau);

  py::enum_<GumbelMethod>(m, "GumbelMethod")
      .value("Classic", GumbelMethod::Classic)
      .value("Hall", GumbelMethod::Hall);

  py::class_<GumbelConstants>(m, "GumbelConstants")
      .def_readonly("a_n", &GumbelConstants::a_n)
      .def_readonly("b_n", &GumbelConstants::b_n)
      .def_readonly("method", &GumbelConstants::method)
      .def_readonly("n", &GumbelConstants::n);

  m.def("simulate_arrivals", &simulate_arrivals, py::arg("m"), py::arg("seed"));
  m.def("upper_curve", &upper_curve, py::arg("arrivals"));
  m.def("lower_curve", &lower_curve, py::arg("arrivals"), py::arg("n_total"));
  m.def("gumbel_constants", &gumbel_constants, py::arg("n"), py::arg("method"));
  m.def("normal_market_curve", &normal_market_curve, py::arg("n"), py::arg("seed"));
  m.def("top_k_standardized", &top_k_standardized, py::arg("sample_size"), py::arg("k"),
        py::arg("constants"), py::arg("seed"), py::call_guard<py::gil_scoped_release>());
  m.def("log_gap_samples", &log_gap_samples, py::arg("k"), py::arg("replicates"), py::arg("seed"),
        py::call_guard<py::gil_scoped_release>());
}
