#pragma once

#include <span>
#include <vector>

namespace ssa {

/// Axis-aligned box of feasible positions. Engine positions stay inside it at
/// the end of every iteration.
class SearchSpace {
public:
  SearchSpace(std::vector<double> lower, std::vector<double> upper);

  /// [-half_width, half_width]^dim
  static SearchSpace symmetric(int dim, double half_width);

  int dim() const { return static_cast<int>(lower_.size()); }
  double lower(int i) const { return lower_[static_cast<std::size_t>(i)]; }
  double upper(int i) const { return upper_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& lower_bounds() const { return lower_; }
  const std::vector<double>& upper_bounds() const { return upper_; }

  bool contains(std::span<const double> x) const;

private:
  std::vector<double> lower_, upper_;
};

}  // namespace ssa
