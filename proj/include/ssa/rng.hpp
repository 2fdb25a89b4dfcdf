#pragma once

#include <cmath>
#include <concepts>
#include <cstdint>
#include <numbers>
#include <random>

namespace ssa {

/// Deterministic uniform source. Every random decision in the library flows
/// through one of these streams, so a seed fixes the complete draw sequence
/// bit-for-bit on any platform. The raw generator is std::mt19937_64 (whose
/// output sequence the standard specifies exactly); the derived uniform reals
/// and bounded integers below are computed by hand because the
/// std::*_distribution adaptors are implementation-defined.
class RngStream {
public:
  explicit RngStream(std::uint64_t seed) : gen_(seed) {}

  /// Uniform real in [0, 1), 53-bit resolution.
  double next_double() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound), bound >= 1. Uses rejection sampling so
  /// every value is exactly equally likely.
  std::size_t next_index(std::size_t bound) {
    const std::uint64_t n = bound;
    const std::uint64_t cutoff = (0 - n) % n;  // 2^64 mod n
    std::uint64_t v = gen_();
    while (v < cutoff) v = gen_();
    return static_cast<std::size_t>(v % n);
  }

  /// Bernoulli draw: true with probability p. Consumes one uniform.
  bool next_bernoulli(double p) { return next_double() < p; }

  /// Standard normal via Box-Muller. Consumes two uniforms.
  double next_normal() {
    const double u1 = next_double();
    const double u2 = next_double();
    return std::sqrt(-2.0 * std::log(1.0 - u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  std::uint64_t next_raw() { return gen_(); }

private:
  std::mt19937_64 gen_;
};

/// Anything that can stand in for RngStream in the per-spider update
/// operations; tests inject scripted sources through this.
template <class R>
concept UniformSource = requires(R r, std::size_t k) {
  { r.next_double() } -> std::convertible_to<double>;
  { r.next_index(k) } -> std::convertible_to<std::size_t>;
};

}  // namespace ssa
