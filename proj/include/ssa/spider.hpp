#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "ssa/vibration.hpp"

namespace ssa {

/// One search agent and its memory.
struct SpiderState {
  std::vector<double> position;
  double fitness = std::numeric_limits<double>::quiet_NaN();  ///< set by the evaluation pass
  Vibration target;                ///< strongest vibration accepted so far
  std::uint64_t inactivity = 0;    ///< iterations since the target last changed
  std::vector<std::uint8_t> mask;  ///< per-dim: 0 follow target source, 1 follow a random spider
  std::vector<double> prev_move;   ///< position delta of the previous iteration
};

}  // namespace ssa
