#include "sizevix/market_sim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "sizevix/parallel.hpp"

namespace sizevix {

namespace {

constexpr double kRelSizeLimit = 700.0;  // exp() overflows just above this

}  // namespace

void ModelParams::validate() const {
  if (!(z_sigma >= 0.0)) throw std::invalid_argument("params: z_sigma must be >= 0");
  if (!(eps_sd >= 0.0)) throw std::invalid_argument("params: eps_sd must be >= 0");
  if (!(delta_sd >= 0.0)) throw std::invalid_argument("params: delta_sd must be >= 0");
  if (std::abs(vix_return_corr) > 1.0)
    throw std::invalid_argument("params: correlation must be in [-1, 1]");
  if (n_portfolios < 1) throw std::invalid_argument("params: need at least one portfolio");
}

ModelParams reference_params() {
  ModelParams p;
  p.vix.alpha = 0.346;
  p.vix.beta = 0.882;
  // Mean-zero variance-gamma innovations; the Gamma factor has unit mean.
  p.vix.innovation = VarianceGammaParams{-0.0621, 0.0621, 0.1392, 1.0 / 0.6573};
  p.units = VixUnits::Index;
  p.bench_return_mean = 0.062;
  p.bench_premium_mean = 0.062;
  p.z_sigma = 0.202;
  p.vix_return_corr = 0.0;
  p.ret_intercept = 0.0;
  p.ret_alpha_slope = 0.0;
  p.ret_beta_slope = -0.1;
  p.prem_intercept = 0.0;
  p.prem_alpha_slope = 0.0;
  p.prem_beta_slope = -0.1;
  p.eps_sd = 1.0;
  p.delta_sd = 1.0;
  p.n_portfolios = 100;
  return p;
}

ModelParams with_units(ModelParams params, VixUnits target) {
  if (params.units != target) {
    const double shift = (1.0 - params.vix.beta) * std::log(100.0);
    params.vix.alpha += target == VixUnits::Monthly ? -shift : shift;
    params.units = target;
  }
  return params;
}

double default_lnv0(VixUnits units) {
  return units == VixUnits::Index ? 3.0 : 3.0 - std::log(100.0);
}

SimPaths simulate_market(const ModelParams& params, std::size_t t_len,
                         const std::vector<double>& c0, double lnv0, std::uint64_t seed,
                         bool keep_innovations) {
  params.validate();
  if (t_len < 1) throw std::invalid_argument("simulate_market: need t_len >= 1");
  const std::size_t n = params.n_portfolios;
  if (c0.size() != n)
    throw std::invalid_argument("simulate_market: c0 size != portfolio count");

  SimPaths paths;
  paths.v.resize(t_len);
  paths.r0.resize(t_len);
  paths.z.resize(t_len);

  // Benchmark stream: stream 0 of the master seed. Portfolio k uses stream
  // k+1 below, so benchmark and portfolio draws never interleave.
  Rng bench_rng(Rng::derive(seed, 0));
  const double rho = params.vix_return_corr;
  const double rho_c = std::sqrt(std::max(0.0, 1.0 - rho * rho));
  double ln_v = lnv0;
  for (std::size_t t = 0; t < t_len; ++t) {
    double z;
    if (t == 0) {
      // Initial volatility is a given state, not a draw; only the
      // benchmark noise is sampled.
      z = params.z_sigma * bench_rng.normal();
    } else {
      double w, y;
      if (const auto* vg = std::get_if<VarianceGammaParams>(&params.vix.innovation)) {
        const double gm = bench_rng.gamma(vg->gamma_shape) / vg->gamma_shape;
        y = bench_rng.normal();
        w = vg->c0 + vg->c1 * gm + vg->c2 * std::sqrt(gm) * y;
      } else {
        y = bench_rng.normal();
        w = std::get<GaussianInnovation>(params.vix.innovation).sigma * y;
      }
      ln_v = params.vix.alpha + params.vix.beta * ln_v + w;
      z = params.z_sigma * (rho * y + rho_c * bench_rng.normal());
    }
    paths.v[t] = std::exp(ln_v);
    paths.z[t] = z;
    paths.r0[t] = paths.v[t] * (params.bench_return_mean + z);
  }

  // Coefficients of the size recursion, shared across portfolios.
  std::vector<double> coef_a(t_len), coef_v(t_len);
  for (std::size_t t = 0; t < t_len; ++t) {
    coef_a[t] = 1.0 + params.ret_alpha_slope * paths.v[t] + params.ret_beta_slope * paths.r0[t];
    coef_v[t] = paths.v[t];
  }

  paths.c.assign(n, std::vector<double>(t_len + 1));
  if (keep_innovations) paths.eps.assign(n, std::vector<double>(t_len));

  parallel_for(n, [&](std::size_t k) {
    Rng rng(Rng::derive(seed, 1 + k));
    auto& ck = paths.c[k];
    ck[0] = c0[k];
    for (std::size_t t = 0; t < t_len; ++t) {
      const double eps = params.eps_sd * rng.normal();
      if (keep_innovations) paths.eps[k][t] = eps;
      ck[t + 1] = coef_a[t] * ck[t] + coef_v[t] * (params.ret_intercept + eps);
      if (!std::isfinite(ck[t + 1]))
        throw std::overflow_error("simulate_market: relative size diverged to non-finite");
    }
  });
  return paths;
}

PremiaPaths simulate_premia(const SimPaths& paths, const ModelParams& params, std::uint64_t seed,
                            bool share_benchmark_noise) {
  params.validate();
  const std::size_t t_len = paths.t_len();
  const std::size_t n = params.n_portfolios;
  if (paths.c.size() != n)
    throw std::invalid_argument("simulate_premia: paths portfolio count != params");
  if (t_len == 0 || paths.z.size() != t_len)
    throw std::invalid_argument("simulate_premia: invalid paths");

  PremiaPaths out;
  out.p0.resize(t_len);
  Rng bench_rng(Rng::derive(seed, 0));
  for (std::size_t t = 0; t < t_len; ++t) {
    const double z = share_benchmark_noise ? paths.z[t] : params.z_sigma * bench_rng.normal();
    out.p0[t] = paths.v[t] * (params.bench_premium_mean + z);
  }

  out.p.assign(n, std::vector<double>(t_len));
  parallel_for(n, [&](std::size_t k) {
    Rng rng(Rng::derive(seed, 1 + k));
    for (std::size_t t = 0; t < t_len; ++t) {
      const double c = paths.c[k][t];
      const double delta = params.delta_sd * rng.normal();
      out.p[k][t] = paths.v[t] * (params.prem_intercept + params.prem_alpha_slope * c + delta) +
                    (1.0 + params.prem_beta_slope * c) * out.p0[t];
    }
  });
  return out;
}

std::vector<double> market_weights(const std::vector<double>& rel_sizes, double s0) {
  if (!(s0 > 0.0)) throw std::invalid_argument("market_weights: s0 must be > 0");
  for (double c : rel_sizes) {
    if (!std::isfinite(c)) throw std::invalid_argument("market_weights: non-finite relative size");
    if (c > kRelSizeLimit)
      throw std::overflow_error("market_weights: relative size > 700 would overflow; rescale");
  }
  std::vector<double> weights(rel_sizes.size() + 1);
  weights[0] = s0;
  double total = s0;
  for (std::size_t k = 0; k < rel_sizes.size(); ++k) {
    weights[k + 1] = s0 * std::exp(rel_sizes[k]);
    total += weights[k + 1];
  }
  for (double& w : weights) w /= total;
  return weights;
}

CurvePoints capital_curve(const std::vector<double>& rel_sizes) {
  if (rel_sizes.empty()) throw std::invalid_argument("capital_curve: empty input");
  std::vector<std::size_t> order(rel_sizes.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return rel_sizes[i] > rel_sizes[j]; });
  CurvePoints curve;
  curve.x.resize(rel_sizes.size());
  curve.y.resize(rel_sizes.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    curve.x[k] = std::log(static_cast<double>(k + 1));
    curve.y[k] = rel_sizes[order[k]];
  }
  return curve;
}

ConditionalMoments conditional_moments(std::span<const double> v_path,
                                       std::span<const double> z_path,
                                       const ModelParams& params, std::size_t terms) {
  const std::size_t len = v_path.size();
  if (z_path.size() != len)
    throw std::invalid_argument("conditional_moments: path length mismatch");
  if (terms < 1 || terms > len)
    throw std::invalid_argument("conditional_moments: need 1 <= terms <= path length");

  // Sum backwards from the most recent observation: term j carries the
  // product of the j most recent contraction coefficients.
  const std::size_t last = len - 1;
  double prod = 1.0, prod2 = 1.0;
  double mean = 0.0, var = 0.0;
  for (std::size_t j = 0; j < terms; ++j) {
    const std::size_t t = last - j;
    mean += prod * v_path[t];
    var += prod2 * v_path[t] * v_path[t];
    const double a = 1.0 + params.ret_alpha_slope * v_path[t] +
                     params.ret_beta_slope * v_path[t] * (params.bench_return_mean + z_path[t]);
    prod *= a;
    prod2 *= a * a;
  }
  ConditionalMoments cm;
  cm.cond_mean = params.ret_intercept * mean;
  cm.cond_sd = params.eps_sd * std::sqrt(var);
  cm.truncation_terms = terms;
  if (!(cm.cond_sd > 0.0))
    throw std::runtime_error("conditional_moments: conditional sd is not positive");
  return cm;
}

std::vector<double> standardize_curve(const std::vector<double>& rel_sizes,
                                      const ConditionalMoments& cm) {
  if (!(cm.cond_sd > 0.0))
    throw std::invalid_argument("standardize_curve: conditional sd must be > 0");
  std::vector<double> out(rel_sizes.size());
  for (std::size_t k = 0; k < rel_sizes.size(); ++k)
    out[k] = (rel_sizes[k] - cm.cond_mean) / cm.cond_sd;
  return out;
}

}  // namespace sizevix
