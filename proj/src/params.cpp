#include "ssa/params.hpp"

#include <cmath>
#include <string>

#include "ssa/errors.hpp"

namespace ssa {

void SsaParams::validate() const {
  if (pop < 2) throw ConfigError("params: population size must be >= 2, got " + std::to_string(pop));
  if (!(ra > 0.0) || !std::isfinite(ra))
    throw ConfigError("params: attenuation rate must be finite and > 0");
  if (!(pc > 0.0 && pc < 1.0)) throw ConfigError("params: pc must lie in (0,1)");
  if (!(pm > 0.0 && pm < 1.0)) throw ConfigError("params: pm must lie in (0,1)");
  if (!std::isfinite(intensity_base)) throw ConfigError("params: intensity baseline must be finite");
  if (budget < static_cast<std::uint64_t>(pop))
    throw ConfigError("params: budget must cover at least one evaluation pass (budget >= pop)");
  if (target && !std::isfinite(*target)) throw ConfigError("params: target fitness must be finite");
}

}  // namespace ssa
