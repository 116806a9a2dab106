#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sizevix/curve.hpp"

namespace sizevix {

// Jump times of a unit-rate Poisson process: tau_1 < tau_2 < ... with IID
// Exp(1) gaps (tau_0 = 0).
struct PoissonArrivals {
  std::vector<double> tau;
};

PoissonArrivals simulate_arrivals(std::size_t m, std::uint64_t seed);

// Top end of the ranked-normal curve in Poisson coordinates: (ln k, -ln tau_k).
CurvePoints upper_curve(const PoissonArrivals& arrivals);

// Bottom end: (ln(N+1-k), ln tau_k) for k = 1..m, m <= n_total.
CurvePoints lower_curve(const PoissonArrivals& arrivals, std::size_t n_total);

enum class GumbelMethod { Classic, Hall };

// Normalizing pair for the maximum of n standard normals. Classic uses the
// closed-form a_n = 1/sqrt(2 ln n); Hall solves n*phi(b_n) = b_n, which
// converges noticeably faster, with a_n = 1/b_n.
struct GumbelConstants {
  double a_n = 1.0;
  double b_n = 0.0;
  GumbelMethod method = GumbelMethod::Classic;
  double n = 0.0;
};

GumbelConstants gumbel_constants(double n, GumbelMethod method);

// (ln k, z_(k)) for a ranked IID standard normal sample of size n.
CurvePoints normal_market_curve(std::size_t n, std::uint64_t seed);

// Top k order statistics of n standard normals, centered by b_n and scaled
// by a_n.
std::vector<double> top_k_standardized(std::size_t sample_size, std::size_t k,
                                       const GumbelConstants& constants, std::uint64_t seed);

// Independent replicates of ln tau_{k+1} - ln tau_k (distributed Exp(k)).
std::vector<double> log_gap_samples(std::size_t k, std::size_t replicates, std::uint64_t seed);

}  // namespace sizevix
