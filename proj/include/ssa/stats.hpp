#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace ssa {

/// Descriptive statistics of a cell's final fitness values.
struct CellSummary {
  std::size_t count = 0;
  double mean = 0.0;
  double stddev = 0.0;  ///< sample std, N-1 denominator; 0 by convention for N == 1
  double min = 0.0;
  double median = 0.0;  ///< lower median: the ceil(N/2)-th order statistic
  double max = 0.0;
};

/// Throws std::invalid_argument on empty input.
CellSummary summarize(std::span<const double> finals);

/// The ceil(N/2)-th order statistic (lower median for even N).
double lower_median(std::span<const double> xs);

/// Index (into the original order) of the element holding the lower median;
/// ties resolve to the earliest index, so the pick is deterministic.
std::size_t lower_median_index(std::span<const double> xs);

struct EcdfPoint {
  double threshold = 0.0;
  double rate = 0.0;
};

/// rate(theta) = #{finals <= theta} / #finals for each threshold.
/// Thresholds must be sorted ascending (throws std::invalid_argument).
std::vector<EcdfPoint> success_ecdf(std::span<const double> finals,
                                    std::span<const double> thresholds);

struct RankSumResult {
  double rank_sum = 0.0;  ///< rank sum of sample a (midranks for ties)
  double z = 0.0;         ///< continuity-corrected standardized statistic
  double p_value = 1.0;   ///< two-sided, normal approximation
  char verdict = '=';     ///< '-': a significantly lower, '+': higher, '=': neither
};

/// Two-sided rank-sum test with midranks, tie-corrected variance and
/// continuity correction. Significance is declared at p < alpha; the verdict
/// direction comes from the lower medians (a is the candidate, b the
/// opponent, minimization). Throws std::invalid_argument if either sample has
/// fewer than 3 values.
RankSumResult wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b,
                                double alpha);

/// Least-squares fit of y ~ c0 + c1 x + c2 x^2. Throws ConfigError when
/// fewer than 3 distinct x values are supplied (underdetermined).
std::array<double, 3> quadratic_fit(std::span<const double> x, std::span<const double> y);

}  // namespace ssa
