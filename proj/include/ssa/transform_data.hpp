#pragma once

#include <filesystem>

#include "ssa/objective.hpp"

namespace ssa {

/// On-disk format (UTF-8 text, decimals with 17 significant digits so values
/// round-trip exactly):
///   line 1: ssa-transform v1 <function-id> <n>
///   line 2: shift vector, n space-separated decimals, or "none"
///   then:   n rows of the rotation matrix, or a single "none"
void save_transform_data(const std::filesystem::path& path, int id, int n,
                         const TransformChain& chain);

struct LoadedTransform {
  int id = 0;
  int n = 0;
  TransformChain chain;
};

/// Parses the v1 format; errors name the offending line. Scale and hybrid
/// split are recomputed from the id and n on the header line.
LoadedTransform load_transform_data(const std::filesystem::path& path);

}  // namespace ssa
