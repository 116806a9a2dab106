#include "sizevix/stability.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "sizevix/parallel.hpp"
#include "sizevix/special.hpp"

namespace sizevix {

namespace {

Verdict call_verdict(double log_moment, double std_error) {
  if (std::abs(log_moment) <= 3.0 * std_error) return Verdict::Inconclusive;
  return log_moment < 0.0 ? Verdict::Stable : Verdict::Unstable;
}

// Adaptive Simpson on a smooth stretch.
double simpson(double fa, double fm, double fb, double a, double b) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename F>
double adaptive_simpson(const F& f, double a, double b, double fa, double fm, double fb,
                        double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(fa, flm, fm, a, m);
  const double right = simpson(fm, frm, fb, m, b);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <typename F>
double integrate(const F& f, double a, double b, double tol) {
  if (!(b > a)) return 0.0;
  const double fa = f(a);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  const double fb = f(b);
  return adaptive_simpson(f, a, b, fa, fm, fb, simpson(fa, fm, fb, a, b), tol, 60);
}

// Pre-splits [a, b] into panels of width <= 2 so the adaptive pass cannot
// miss a narrow bump inside a wide interval.
template <typename F>
double integrate_panels(const F& f, double a, double b, double tol) {
  if (!(b > a)) return 0.0;
  const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / 2.0)));
  double total = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double lo = a + (b - a) * i / panels;
    const double hi = a + (b - a) * (i + 1) / panels;
    total += integrate(f, lo, hi, tol / panels);
  }
  return total;
}

}  // namespace

StabilityReport estimate_log_contraction(const ModelParams& params, std::size_t n,
                                         std::size_t burn_in, std::uint64_t seed) {
  params.validate();
  if (n < 10000) throw std::invalid_argument("estimate_log_contraction: need n >= 10^4");
  if (!(params.vix.beta > -1.0 && params.vix.beta < 1.0))
    throw std::invalid_argument("estimate_log_contraction: need |beta| < 1");

  // Stationary draws of (V, R0): one long path started at the AR(1) mean
  // with the first burn_in states discarded.
  Rng rng(seed);
  const double lnv0 = params.vix.alpha / (1.0 - params.vix.beta);
  const double a = params.ret_alpha_slope;
  const double b = params.ret_beta_slope;

  double ln_v = lnv0;
  for (std::size_t t = 0; t < burn_in; ++t)
    ln_v = params.vix.alpha + params.vix.beta * ln_v + sample_innovation(params.vix, rng);

  StabilityReport report;
  report.n_samples = n;
  double sum = 0.0, sum2 = 0.0, sum_v = 0.0, sum_r0 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ln_v = params.vix.alpha + params.vix.beta * ln_v + sample_innovation(params.vix, rng);
    const double v = std::exp(ln_v);
    double arg;
    double r0;
    for (;;) {
      r0 = v * (params.bench_return_mean + params.z_sigma * rng.normal());
      arg = 1.0 + a * v + b * r0;
      if (arg != 0.0) break;
      ++report.zero_redraws;
    }
    const double x = std::log(std::abs(arg));
    sum += x;
    sum2 += x * x;
    sum_v += v;
    sum_r0 += r0;
  }
  const double nd = static_cast<double>(n);
  report.log_moment = sum / nd;
  const double var = std::max(0.0, sum2 / nd - report.log_moment * report.log_moment);
  report.std_error = std::sqrt(var / nd);
  report.mean_v = sum_v / nd;
  report.mean_r0 = sum_r0 / nd;
  report.first_order = a * report.mean_v + b * report.mean_r0;
  report.verdict = call_verdict(report.log_moment, report.std_error);
  return report;
}

McEstimate gaussian_log_moment(double mu, double rho, std::size_t n, std::uint64_t seed) {
  if (rho < 0.0) throw std::domain_error("gaussian_log_moment: rho must be >= 0");
  if (rho == 0.0) {
    if (mu == 0.0) throw std::domain_error("gaussian_log_moment: degenerate xi = 0");
    return {std::log(std::abs(mu)), 0.0};
  }
  if (n < 10000) throw std::invalid_argument("gaussian_log_moment: need n >= 10^4");
  Rng rng(seed);
  double sum = 0.0, sum2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double arg;
    do {
      arg = mu + rho * rng.normal();
    } while (arg == 0.0);
    const double x = std::log(std::abs(arg));
    sum += x;
    sum2 += x * x;
  }
  const double nd = static_cast<double>(n);
  const double mean = sum / nd;
  const double var = std::max(0.0, sum2 / nd - mean * mean);
  return {mean, std::sqrt(var / nd)};
}

double gaussian_log_moment_quadrature(double mu, double rho) {
  if (!(rho > 0.0)) throw std::domain_error("gaussian_log_moment_quadrature: rho must be > 0");
  // E ln|mu + rho Z| = ln(rho) + I, I = integral of ln|z - z0| phi(z) with
  // z0 = -mu/rho.
  const double z0 = -mu / rho;
  const auto f = [z0](double z) { return std::log(std::abs(z - z0)) * normal_pdf(z); };
  const double tol = 1e-12;

  double integral = 0.0;
  if (std::abs(z0) <= 13.0) {
    // Cut out [z0-d, z0+d] and integrate ln|u| against the quartic Taylor
    // expansion of phi around z0; odd powers vanish on the symmetric window.
    const double d = 0.01;
    const double p0 = normal_pdf(z0);
    const double p2 = p0 * (z0 * z0 - 1.0) * 0.5;          // phi''(z0)/2!
    const double p4 = p0 * (z0 * z0 * (z0 * z0 - 6.0) + 3.0) / 24.0;  // phi''''(z0)/4!
    const double ld = std::log(d);
    integral += p0 * 2.0 * d * (ld - 1.0);
    integral += p2 * (2.0 * d * d * d / 3.0) * (ld - 1.0 / 3.0);
    integral += p4 * (2.0 * std::pow(d, 5) / 5.0) * (ld - 1.0 / 5.0);
    integral += integrate_panels(f, std::min(-12.0, z0 - 1.0), z0 - d, tol);
    integral += integrate_panels(f, z0 + d, std::max(12.0, z0 + 1.0), tol);
  } else {
    // The singular point carries no density mass; integrate the smooth core.
    integral = integrate_panels(f, -12.0, 12.0, tol);
  }
  return std::log(rho) + integral;
}

RegionGrid stability_region(std::pair<double, double> mu_range,
                            std::pair<double, double> rho_range, std::size_t grid_n,
                            std::size_t samples_per_cell, std::uint64_t seed) {
  if (grid_n < 2) throw std::invalid_argument("stability_region: need grid_n >= 2");
  RegionGrid grid;
  grid.mu_axis.resize(grid_n);
  grid.rho_axis.resize(grid_n);
  for (std::size_t i = 0; i < grid_n; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(grid_n - 1);
    grid.mu_axis[i] = mu_range.first + t * (mu_range.second - mu_range.first);
    grid.rho_axis[i] = rho_range.first + t * (rho_range.second - rho_range.first);
  }
  grid.values.resize(grid_n * grid_n);

  parallel_for(grid_n * grid_n, [&](std::size_t cell) {
    const std::size_t i = cell % grid_n;
    const std::size_t j = cell / grid_n;
    const double mu = grid.mu_axis[i];
    const double rho = grid.rho_axis[j];
    if (mu == 0.0 && rho == 0.0) {
      // xi is identically zero; keep the grid finite with the log floor.
      grid.values[cell] = std::log(std::numeric_limits<double>::min());
      return;
    }
    grid.values[cell] =
        gaussian_log_moment(mu, rho, samples_per_cell, Rng::derive(seed, cell)).estimate;
  });

  for (std::size_t j = 0; j < grid_n; ++j) {
    for (std::size_t i = 0; i + 1 < grid_n; ++i) {
      const double v0 = grid.at(i, j);
      const double v1 = grid.at(i + 1, j);
      if (v0 == 0.0) {
        grid.boundary.emplace_back(grid.mu_axis[i], grid.rho_axis[j]);
      } else if (v0 * v1 < 0.0) {
        const double t = v0 / (v0 - v1);
        grid.boundary.emplace_back(
            grid.mu_axis[i] + t * (grid.mu_axis[i + 1] - grid.mu_axis[i]), grid.rho_axis[j]);
      }
    }
    if (grid.at(grid_n - 1, j) == 0.0)
      grid.boundary.emplace_back(grid.mu_axis[grid_n - 1], grid.rho_axis[j]);
  }
  return grid;
}

}  // namespace sizevix
