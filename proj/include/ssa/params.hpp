#pragma once

#include <cstdint>
#include <optional>

namespace ssa {

/// Engine parameters. The defaults are the recommended settings from the
/// parameter study (ra = 1, pc = 0.7, pm = 0.1).
struct SsaParams {
  int pop = 10;          ///< population size, >= 2
  double ra = 1.0;       ///< vibration attenuation rate, > 0
  double pc = 0.7;       ///< mask-keep base in (0,1); change prob is 1 - pc^inactivity
  double pm = 0.1;       ///< per-bit one-probability of a resampled mask, in (0,1)
  /// Baseline constant C in log(1/(f-C)+1). Must stay strictly below every
  /// fitness the objective can produce. Keep |C| tiny: a large magnitude
  /// flattens 1/(f-C) so far that fitness differences vanish in rounding and
  /// the population loses all selection pressure.
  double intensity_base = -1e-100;
  std::uint64_t budget = 100'000; ///< max function evaluations per run
  std::optional<double> target;   ///< optional early-stop fitness
  std::uint64_t seed = 0;

  /// Throws ConfigError on any out-of-range field.
  void validate() const;
};

}  // namespace ssa
