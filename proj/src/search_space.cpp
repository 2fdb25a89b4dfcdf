#include "ssa/search_space.hpp"

#include <cmath>
#include <string>

#include "ssa/errors.hpp"

namespace ssa {

SearchSpace::SearchSpace(std::vector<double> lower, std::vector<double> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.empty() || lower_.size() != upper_.size())
    throw ConfigError("search space: bounds must be non-empty and of equal length");
  for (std::size_t i = 0; i < lower_.size(); ++i) {
    if (!std::isfinite(lower_[i]) || !std::isfinite(upper_[i]))
      throw ConfigError("search space: non-finite bound at dimension " + std::to_string(i));
    if (!(lower_[i] < upper_[i]))
      throw ConfigError("search space: lower >= upper at dimension " + std::to_string(i));
  }
}

SearchSpace SearchSpace::symmetric(int dim, double half_width) {
  if (dim < 1) throw ConfigError("search space: dimension must be >= 1");
  return SearchSpace(std::vector<double>(static_cast<std::size_t>(dim), -half_width),
                     std::vector<double>(static_cast<std::size_t>(dim), half_width));
}

bool SearchSpace::contains(std::span<const double> x) const {
  if (x.size() != lower_.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] < lower_[i] || x[i] > upper_[i]) return false;
  return true;
}

}  // namespace ssa
