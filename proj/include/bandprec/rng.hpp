#pragma once

#include <cstdint>

namespace bandprec {

// Counter-based generator: the i-th output of a stream is a pure function of
// (key, i), so streams can be replayed and distributed across threads without
// shared state. Output i is the splitmix64 finalizer applied to
// key + i * 0x9e3779b97f4a7c15.
//
// Normals use the AS241 inverse normal CDF on a 53-bit uniform; gamma variates
// use the Marsaglia-Tsang squeeze. Both choices are fixed: acceptance numbers
// depend on the exact draw sequence.
// Key of the substream stream_id under a master seed.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream_id);

class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(key) {}

  // Independent substream: key mixed from (seed, stream_id).
  static CounterRng stream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t next_u64();

  // Uniform on the open interval (0, 1).
  double next_uniform();

  // Standard normal via inverse CDF.
  double next_normal();

  // Gamma(shape) with unit scale, shape > 0.
  double next_gamma(double shape);

  double next_chi_squared(double df) { return 2.0 * next_gamma(0.5 * df); }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// AS241: quantile function of the standard normal, |error| ~ 1e-15.
double inverse_normal_cdf(double p);

}  // namespace bandprec
