#pragma once

#include <array>
#include <cstdint>

namespace sizevix {

// Counter-free xoshiro256++ stream with self-contained samplers.
// Every Monte Carlo routine in this library takes an explicit seed or an
// Rng&; there is no global generator. Samplers avoid std::*_distribution
// so that a given seed produces the same stream on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();

  // Uniform on the open interval (0, 1); never returns 0 or 1.
  double uniform01();

  // Standard normal via the Marsaglia polar method (one spare cached).
  double normal();

  // Gamma(shape, rate=1) via Marsaglia-Tsang squeeze rejection; exact for
  // shape >= 1, boosted from shape+1 otherwise.
  double gamma(double shape);

  // Exponential with mean 1.
  double exponential();

  // Stable sub-stream seed for worker `stream` of a master seed. Used to
  // make per-portfolio / per-cell draws independent of scheduling.
  static std::uint64_t derive(std::uint64_t master, std::uint64_t stream);

 private:
  std::array<std::uint64_t, 4> state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace sizevix
