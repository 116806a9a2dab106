#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "sizevix/month.hpp"
#include "sizevix/rng.hpp"

namespace sizevix {

// Log-scale AR(1) fit of a positive series: ln v(t) = alpha + beta ln v(t-1) + w(t).
struct Ar1Fit {
  double alpha = 0.0;
  double beta = 0.0;
  std::vector<double> innovations;  // residuals w(t), mean zero
  std::pair<double, double> beta_ci95{0, 0};
};

Ar1Fit fit_log_ar1(std::span<const double> values);
Ar1Fit fit_log_ar1(const MonthlySeries& series);

// Innovation law w = c0 + c1*G + c2*sqrt(G)*Y with Y ~ N(0,1) and G Gamma
// distributed with the given shape and unit mean (rate = shape).
struct VarianceGammaParams {
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 1.0;
  double gamma_shape = 1.0;
};

struct GaussianInnovation {
  double sigma = 1.0;
};

using VixInnovation = std::variant<VarianceGammaParams, GaussianInnovation>;

struct VixModel {
  double alpha = 0.0;
  double beta = 0.0;  // needs |beta| < 1 for anything stationary
  VixInnovation innovation;
};

double sample_vg(const VarianceGammaParams& params, Rng& rng);
double sample_innovation(const VixModel& model, Rng& rng);

// ln M_w(s) of the innovation law; throws std::domain_error outside the
// moment generating function's domain.
double innovation_log_mgf(const VixModel& model, double s);

// Path of v(t) = exp(ln v(t)), length t_len, starting at exp(lnv0).
std::vector<double> simulate_log_vix(const VixModel& model, std::size_t t_len, double lnv0,
                                     Rng& rng);

// Stationary E[v^u] = exp(alpha*u/(1-beta)) * prod_k M_w(beta^k * u),
// truncated after max_terms factors or once |ln M_w| < 1e-14.
struct StationaryMoment {
  double value = 0.0;
  std::size_t terms_used = 0;
  double log_tail_bound = 0.0;  // estimate of the dropped log-factors
};

StationaryMoment stationary_moment(const VixModel& model, double u, std::size_t max_terms = 500);

}  // namespace sizevix
