#include "sizevix/extremes.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "sizevix/rng.hpp"
#include "sizevix/special.hpp"

namespace sizevix {

PoissonArrivals simulate_arrivals(std::size_t m, std::uint64_t seed) {
  if (m < 1) throw std::invalid_argument("simulate_arrivals: need m >= 1");
  Rng rng(seed);
  PoissonArrivals arrivals;
  arrivals.tau.resize(m);
  double t = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    t += rng.exponential();
    arrivals.tau[k] = t;
  }
  return arrivals;
}

CurvePoints upper_curve(const PoissonArrivals& arrivals) {
  CurvePoints curve;
  const std::size_t m = arrivals.tau.size();
  curve.x.resize(m);
  curve.y.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    curve.x[k] = std::log(static_cast<double>(k + 1));
    curve.y[k] = -std::log(arrivals.tau[k]);
  }
  return curve;
}

CurvePoints lower_curve(const PoissonArrivals& arrivals, std::size_t n_total) {
  const std::size_t m = arrivals.tau.size();
  if (m > n_total) throw std::invalid_argument("lower_curve: m exceeds the sample size N");
  CurvePoints curve;
  curve.x.resize(m);
  curve.y.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    curve.x[k] = std::log(static_cast<double>(n_total - k));
    curve.y[k] = std::log(arrivals.tau[k]);
  }
  return curve;
}

GumbelConstants gumbel_constants(double n, GumbelMethod method) {
  if (!(n >= 2.0)) throw std::invalid_argument("gumbel_constants: need n >= 2");
  GumbelConstants out;
  out.method = method;
  out.n = n;
  const double two_ln_n = 2.0 * std::log(n);
  if (method == GumbelMethod::Classic) {
    const double root = std::sqrt(two_ln_n);
    out.a_n = 1.0 / root;
    out.b_n = root - std::log(4.0 * M_PI * std::log(n)) / (2.0 * root);
    return out;
  }
  // n*phi(b) - b is strictly decreasing on the bracket, so bisect until the
  // endpoints are adjacent doubles.
  const auto f = [n](double b) { return n * normal_pdf(b) - b; };
  double lo = 0.1;
  double hi = std::sqrt(two_ln_n) + 2.0;
  if (!(f(lo) > 0.0) || !(f(hi) < 0.0))
    throw std::runtime_error("gumbel_constants: root not bracketed");
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (f(mid) > 0.0 ? lo : hi) = mid;
  }
  out.b_n = 0.5 * (lo + hi);
  out.a_n = 1.0 / out.b_n;
  return out;
}

CurvePoints normal_market_curve(std::size_t n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("normal_market_curve: need n >= 1");
  Rng rng(seed);
  std::vector<double> sample(n);
  for (double& z : sample) z = rng.normal();
  std::sort(sample.begin(), sample.end(), std::greater<>());
  CurvePoints curve;
  curve.x.resize(n);
  curve.y = std::move(sample);
  for (std::size_t k = 0; k < n; ++k) curve.x[k] = std::log(static_cast<double>(k + 1));
  return curve;
}

std::vector<double> top_k_standardized(std::size_t sample_size, std::size_t k,
                                       const GumbelConstants& constants, std::uint64_t seed) {
  if (k < 1 || k > sample_size)
    throw std::invalid_argument("top_k_standardized: need 1 <= k <= sample size");
  Rng rng(seed);
  std::vector<double> sample(sample_size);
  for (double& z : sample) z = rng.normal();
  std::partial_sort(sample.begin(), sample.begin() + k, sample.end(), std::greater<>());
  std::vector<double> top(k);
  for (std::size_t i = 0; i < k; ++i) top[i] = (sample[i] - constants.b_n) / constants.a_n;
  return top;
}

std::vector<double> log_gap_samples(std::size_t k, std::size_t replicates, std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("log_gap_samples: need k >= 1");
  Rng rng(seed);
  std::vector<double> gaps(replicates);
  for (std::size_t r = 0; r < replicates; ++r) {
    double tau_k = 0.0;
    for (std::size_t j = 0; j < k; ++j) tau_k += rng.exponential();
    const double tau_next = tau_k + rng.exponential();
    gaps[r] = std::log(tau_next) - std::log(tau_k);
  }
  return gaps;
}

}  // namespace sizevix
