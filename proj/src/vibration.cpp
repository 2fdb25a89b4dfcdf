#include "ssa/vibration.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ssa/errors.hpp"

namespace ssa {

double source_intensity(double fitness, double base) {
  if (!(fitness > base))
    throw BaselineError("intensity baseline " + std::to_string(base) +
                        " is not strictly below fitness " + std::to_string(fitness));
  return std::log(1.0 / (fitness - base) + 1.0);
}

double manhattan_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw std::invalid_argument("manhattan_distance: dimension mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d += std::abs(a[i] - b[i]);
  return d;
}

double attenuation_factor(double distance, double sigma_bar, double ra) {
  return std::exp(-distance / (std::max(sigma_bar, kSigmaEps) * ra));
}

double attenuated_intensity(const Vibration& v, std::span<const double> receiver,
                            double sigma_bar, double ra) {
  return v.intensity *
         attenuation_factor(manhattan_distance(v.source, receiver), sigma_bar, ra);
}

}  // namespace ssa
