#include "sizevix/volatility.hpp"

#include <cmath>
#include <stdexcept>

#include "sizevix/regression.hpp"
#include "sizevix/special.hpp"

namespace sizevix {

Ar1Fit fit_log_ar1(std::span<const double> values) {
  if (values.size() < 30) throw std::invalid_argument("fit_log_ar1: need at least 30 values");
  std::vector<double> logs(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0)) throw std::invalid_argument("fit_log_ar1: nonpositive value");
    logs[i] = std::log(values[i]);
  }
  const std::size_t n = logs.size() - 1;
  std::vector<double> ones(n, 1.0), lagged(n), y(n);
  for (std::size_t t = 0; t < n; ++t) {
    lagged[t] = logs[t];
    y[t] = logs[t + 1];
  }
  const OlsFit ols = ols_fit({ones, lagged}, y);
  Ar1Fit fit;
  fit.alpha = ols.coefficients[0];
  fit.beta = ols.coefficients[1];
  fit.innovations = ols.residuals;
  const double tq = student_t_quantile(0.975, static_cast<double>(ols.n - ols.p));
  fit.beta_ci95 = {fit.beta - tq * ols.std_errors[1], fit.beta + tq * ols.std_errors[1]};
  return fit;
}

Ar1Fit fit_log_ar1(const MonthlySeries& series) {
  series.validate("vix");
  return fit_log_ar1(std::span<const double>(series.values));
}

double sample_vg(const VarianceGammaParams& params, Rng& rng) {
  if (!(params.gamma_shape > 0.0))
    throw std::invalid_argument("sample_vg: gamma_shape must be > 0");
  // rate = shape keeps the Gamma factor at unit mean.
  const double g = rng.gamma(params.gamma_shape) / params.gamma_shape;
  return params.c0 + params.c1 * g + params.c2 * std::sqrt(g) * rng.normal();
}

double sample_innovation(const VixModel& model, Rng& rng) {
  if (const auto* vg = std::get_if<VarianceGammaParams>(&model.innovation))
    return sample_vg(*vg, rng);
  return std::get<GaussianInnovation>(model.innovation).sigma * rng.normal();
}

double innovation_log_mgf(const VixModel& model, double s) {
  if (const auto* vg = std::get_if<VarianceGammaParams>(&model.innovation)) {
    // Conditionally on G the law is Gaussian, so M_w(s) reduces to a Gamma
    // MGF evaluated at c1*s + c2^2*s^2/2, with rate = shape.
    const double arg = vg->c1 * s + 0.5 * vg->c2 * vg->c2 * s * s;
    if (arg >= vg->gamma_shape)
      throw std::domain_error("innovation_log_mgf: argument outside the variance-gamma domain");
    return vg->c0 * s - vg->gamma_shape * std::log1p(-arg / vg->gamma_shape);
  }
  const double sigma = std::get<GaussianInnovation>(model.innovation).sigma;
  return 0.5 * sigma * sigma * s * s;
}

std::vector<double> simulate_log_vix(const VixModel& model, std::size_t t_len, double lnv0,
                                     Rng& rng) {
  if (t_len < 1) throw std::invalid_argument("simulate_log_vix: need t_len >= 1");
  std::vector<double> path(t_len);
  double ln_v = lnv0;
  path[0] = std::exp(ln_v);
  for (std::size_t t = 1; t < t_len; ++t) {
    ln_v = model.alpha + model.beta * ln_v + sample_innovation(model, rng);
    path[t] = std::exp(ln_v);
  }
  return path;
}

StationaryMoment stationary_moment(const VixModel& model, double u, std::size_t max_terms) {
  if (!(u > 0.0 && u <= 2.0)) throw std::domain_error("stationary_moment: need 0 < u <= 2");
  if (!(model.beta > -1.0 && model.beta < 1.0))
    throw std::domain_error("stationary_moment: need |beta| < 1");
  if (max_terms < 1) throw std::invalid_argument("stationary_moment: need max_terms >= 1");

  double log_sum = model.alpha * u / (1.0 - model.beta);
  double factor_arg = u;
  double last_log = 0.0;
  std::size_t used = 0;
  for (std::size_t k = 0; k < max_terms; ++k) {
    last_log = innovation_log_mgf(model, factor_arg);
    log_sum += last_log;
    ++used;
    factor_arg *= model.beta;
    if (std::abs(last_log) < 1e-14) break;
  }
  StationaryMoment out;
  out.terms_used = used;
  // Remaining factors shrink by ~beta per term (ln M_w is locally linear
  // near 0), so a geometric extrapolation of the last one bounds the tail.
  const double b = std::abs(model.beta);
  out.log_tail_bound = b < 1.0 ? std::abs(last_log) * b / (1.0 - b) : 0.0;
  out.value = std::exp(log_sum);
  return out;
}

}  // namespace sizevix
