#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sizevix/curve.hpp"
#include "sizevix/volatility.hpp"

namespace sizevix {

// Scale convention of the volatility series fed into the dynamics: raw
// index points (e.g. ~20) or index/100 (e.g. ~0.20, comparable to monthly
// log returns). The simulator itself is scale-agnostic; the flag records
// which convention the parameters and lnv0 follow and picks CLI defaults.
enum class VixUnits { Index, Monthly };

// Full generative parameter set: volatility AR(1), benchmark laws, the two
// size-CAPM equations and the portfolio count.
struct ModelParams {
  VixModel vix;
  VixUnits units = VixUnits::Index;

  double bench_return_mean = 0.0;   // mean of R0/V
  double bench_premium_mean = 0.0;  // mean of P0/V
  double z_sigma = 1.0;             // sd of the benchmark noise Z (and Z')
  double vix_return_corr = 0.0;     // corr of the VIX innovation's Gaussian part with Z

  double ret_intercept = 0.0;       // m
  double ret_alpha_slope = 0.0;     // a: alpha per unit of relative size
  double ret_beta_slope = 0.0;      // b: beta adjustment per unit of relative size
  double prem_intercept = 0.0;      // M
  double prem_alpha_slope = 0.0;    // A
  double prem_beta_slope = 0.0;     // B

  double eps_sd = 1.0;    // per-portfolio return noise
  double delta_sd = 1.0;  // per-portfolio premium noise
  std::size_t n_portfolios = 1;

  void validate() const;
};

// Parameters estimated from the 1990-2022 monthly panel (volatility on the
// raw index scale, lnv0 = 3): the default simulation configuration.
ModelParams reference_params();

// Rescales the volatility block between the two conventions: dividing V by
// 100 shifts the AR(1) intercept by (1-beta)*ln(100). Only alpha and the
// units tag change; the caller owns the interpretation of the remaining
// coefficients.
ModelParams with_units(ModelParams params, VixUnits target);

// Conventional start state: ln(20.1) = 3 on the index scale, shifted by
// ln(100) on the monthly scale.
double default_lnv0(VixUnits units);

// Simulated trajectories. v/r0/z have length T; the relative-size matrix c
// holds N rows of T+1 states (initial condition included). eps is filled
// only when requested.
struct SimPaths {
  std::vector<double> v;
  std::vector<double> r0;
  std::vector<double> z;  // benchmark noise actually drawn, r0 = v*(g+z)
  std::vector<std::vector<double>> c;
  std::vector<std::vector<double>> eps;

  std::size_t t_len() const { return v.size(); }
};

// Evolves the volatility, benchmark return and N relative-size processes
// for t_len steps. Portfolio k's noise stream is derived from (seed, k), so
// paths are bit-identical for a fixed seed regardless of thread schedule.
SimPaths simulate_market(const ModelParams& params, std::size_t t_len,
                         const std::vector<double>& c0, double lnv0, std::uint64_t seed,
                         bool keep_innovations = false);

struct PremiaPaths {
  std::vector<double> p0;               // length T
  std::vector<std::vector<double>> p;   // N x T
};

// Premium paths over an existing simulation. With share_benchmark_noise the
// benchmark premium reuses the already-drawn Z; otherwise an independent
// copy is drawn from `seed`.
PremiaPaths simulate_premia(const SimPaths& paths, const ModelParams& params, std::uint64_t seed,
                            bool share_benchmark_noise = false);

// Market weights [mu_0, mu_1, ..., mu_N] from relative sizes; s0 is the
// benchmark capitalization (weights do not depend on it).
std::vector<double> market_weights(const std::vector<double>& rel_sizes, double s0);

// Ranked relative sizes against log rank: (ln k, c_(k)), ties kept in
// original index order.
CurvePoints capital_curve(const std::vector<double>& rel_sizes);

// Conditional mean/sd of the stationary relative size given the observed
// (V, Z) history, truncated backwards from the most recent observation.
struct ConditionalMoments {
  double cond_mean = 0.0;
  double cond_sd = 0.0;
  std::size_t truncation_terms = 0;
};

ConditionalMoments conditional_moments(std::span<const double> v_path,
                                       std::span<const double> z_path,
                                       const ModelParams& params, std::size_t terms);

std::vector<double> standardize_curve(const std::vector<double>& rel_sizes,
                                      const ConditionalMoments& cm);

}  // namespace sizevix
