#pragma once

#include <span>
#include <vector>

namespace ssa {

/// A message on the web: where it was emitted and how strong it is. When a
/// spider stores a received vibration as its target, the stored intensity is
/// the attenuated value heard at reception time and is never re-attenuated.
struct Vibration {
  std::vector<double> source;
  double intensity = 0.0;  ///< always >= 0
};

/// Intensity emitted at a position with the given fitness:
/// log(1/(fitness - base) + 1), natural logarithm. Positive and strictly
/// decreasing in fitness whenever fitness > base.
/// Throws BaselineError if fitness <= base.
double source_intensity(double fitness, double base);

/// 1-norm distance. Throws std::invalid_argument on dimension mismatch.
double manhattan_distance(std::span<const double> a, std::span<const double> b);

/// Clamp applied to the mean position spread before it divides the distance,
/// so a fully collapsed population attenuates everything to ~0 instead of
/// dividing by zero.
inline constexpr double kSigmaEps = 1e-12;

/// exp(-distance / (max(sigma_bar, kSigmaEps) * ra)), in (0, 1].
double attenuation_factor(double distance, double sigma_bar, double ra);

/// Intensity of `v` heard at `receiver`: source intensity decayed over the
/// Manhattan distance, scaled by mean population spread and attenuation rate.
double attenuated_intensity(const Vibration& v, std::span<const double> receiver,
                            double sigma_bar, double ra);

}  // namespace ssa
