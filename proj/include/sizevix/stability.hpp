#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "sizevix/market_sim.hpp"

namespace sizevix {

enum class Verdict { Stable, Unstable, Inconclusive };

// Monte Carlo check of the log-contraction condition E ln|1 + aV + bR0| < 0
// together with its first-order proxy a E[V] + b E[R0]. The verdict is
// Inconclusive whenever |log_moment| <= 3 standard errors: the condition is
// an open inequality, so near-zero estimates must not be called.
struct StabilityReport {
  double log_moment = 0.0;
  double std_error = 0.0;
  std::size_t n_samples = 0;
  double first_order = 0.0;
  Verdict verdict = Verdict::Inconclusive;
  double mean_v = 0.0;
  double mean_r0 = 0.0;
  std::size_t zero_redraws = 0;  // exact-zero ln arguments rejected and redrawn
};

StabilityReport estimate_log_contraction(const ModelParams& params, std::size_t n,
                                         std::size_t burn_in, std::uint64_t seed);

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

// E[ln|xi|] for xi ~ N(mu, rho^2) by Monte Carlo; rho = 0 is the degenerate
// exact case ln|mu| (mu = 0 with rho = 0 is a domain error).
McEstimate gaussian_log_moment(double mu, double rho, std::size_t n, std::uint64_t seed);

// Deterministic cross-check: adaptive quadrature of ln|mu + rho z| phi(z)
// with the integrable singularity handled by a series expansion.
double gaussian_log_moment_quadrature(double mu, double rho);

struct RegionGrid {
  std::vector<double> mu_axis;
  std::vector<double> rho_axis;
  std::vector<double> values;  // values[j * mu_axis.size() + i] for (mu_i, rho_j)
  std::vector<std::pair<double, double>> boundary;  // zero crossings (mu, rho)

  double at(std::size_t i_mu, std::size_t j_rho) const {
    return values[j_rho * mu_axis.size() + i_mu];
  }
};

// Evaluates the Gaussian log moment on a grid (cells run in parallel with
// per-cell seeds) and extracts the zero boundary along each fixed-rho row
// by linear interpolation in mu.
RegionGrid stability_region(std::pair<double, double> mu_range,
                            std::pair<double, double> rho_range, std::size_t grid_n,
                            std::size_t samples_per_cell, std::uint64_t seed);

}  // namespace sizevix
