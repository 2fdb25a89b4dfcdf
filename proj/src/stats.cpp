#include "ssa/stats.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ssa/errors.hpp"

namespace ssa {

CellSummary summarize(std::span<const double> finals) {
  if (finals.empty()) throw std::invalid_argument("summarize: empty sample");
  CellSummary s;
  s.count = finals.size();
  double mean = 0.0;
  for (double v : finals) mean += v;
  mean /= static_cast<double>(s.count);
  s.mean = mean;
  if (s.count > 1) {
    double acc = 0.0;
    for (double v : finals) acc += (v - mean) * (v - mean);
    s.stddev = std::sqrt(acc / static_cast<double>(s.count - 1));
  }
  const auto [lo, hi] = std::minmax_element(finals.begin(), finals.end());
  s.min = *lo;
  s.max = *hi;
  s.median = lower_median(finals);
  return s;
}

double lower_median(std::span<const double> xs) {
  if (xs.empty()) throw std::invalid_argument("lower_median: empty sample");
  std::vector<double> sorted(xs.begin(), xs.end());
  const std::size_t k = (sorted.size() - 1) / 2;  // ceil(N/2)-th order statistic
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(k),
                   sorted.end());
  return sorted[k];
}

std::size_t lower_median_index(std::span<const double> xs) {
  const double med = lower_median(xs);
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (xs[i] == med) return i;
  return 0;  // unreachable: the median is always one of the values
}

std::vector<EcdfPoint> success_ecdf(std::span<const double> finals,
                                    std::span<const double> thresholds) {
  if (finals.empty()) throw std::invalid_argument("success_ecdf: empty sample");
  for (std::size_t i = 1; i < thresholds.size(); ++i)
    if (thresholds[i] < thresholds[i - 1])
      throw std::invalid_argument("success_ecdf: thresholds must ascend");
  std::vector<EcdfPoint> out;
  out.reserve(thresholds.size());
  const double n = static_cast<double>(finals.size());
  for (double theta : thresholds) {
    std::size_t hits = 0;
    for (double v : finals)
      if (v <= theta) ++hits;
    out.push_back({theta, static_cast<double>(hits) / n});
  }
  return out;
}

RankSumResult wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b,
                                double alpha) {
  const std::size_t n1 = a.size(), n2 = b.size();
  if (n1 < 3 || n2 < 3)
    throw std::invalid_argument("wilcoxon_rank_sum: need at least 3 values per sample");
  const std::size_t n = n1 + n2;

  struct Entry {
    double value;
    bool from_a;
  };
  std::vector<Entry> pooled;
  pooled.reserve(n);
  for (double v : a) pooled.push_back({v, true});
  for (double v : b) pooled.push_back({v, false});
  std::sort(pooled.begin(), pooled.end(),
            [](const Entry& x, const Entry& y) { return x.value < y.value; });

  // midranks over runs of equal values, plus the tie-correction term
  double rank_sum_a = 0.0;
  double tie_term = 0.0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && pooled[j].value == pooled[i].value) ++j;
    const double t = static_cast<double>(j - i);
    const double midrank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k)
      if (pooled[k].from_a) rank_sum_a += midrank;
    tie_term += t * t * t - t;
    i = j;
  }

  RankSumResult r;
  r.rank_sum = rank_sum_a;

  const double dn = static_cast<double>(n);
  const double mu = static_cast<double>(n1) * (dn + 1.0) / 2.0;
  const double var = (static_cast<double>(n1) * static_cast<double>(n2) / 12.0) *
                     ((dn + 1.0) - tie_term / (dn * (dn - 1.0)));
  if (var <= 0.0) {  // every pooled value identical
    r.z = 0.0;
    r.p_value = 1.0;
    r.verdict = '=';
    return r;
  }

  const double diff = rank_sum_a - mu;
  double num = 0.0;  // continuity correction: shrink toward zero by 0.5
  if (diff > 0.5)
    num = diff - 0.5;
  else if (diff < -0.5)
    num = diff + 0.5;
  r.z = num / std::sqrt(var);
  r.p_value = std::min(1.0, std::erfc(std::abs(r.z) / std::numbers::sqrt2));

  if (r.p_value < alpha) {
    const double ma = lower_median(a);
    const double mb = lower_median(b);
    if (ma < mb)
      r.verdict = '-';
    else if (ma > mb)
      r.verdict = '+';
  }
  return r;
}

std::array<double, 3> quadratic_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw std::invalid_argument("quadratic_fit: size mismatch");
  std::vector<double> distinct(x.begin(), x.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() < 3)
    throw ConfigError("quadratic fit needs at least 3 distinct x values, got " +
                      std::to_string(distinct.size()));

  const auto m = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd design(m, 3);
  Eigen::VectorXd rhs(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double xi = x[static_cast<std::size_t>(i)];
    design(i, 0) = 1.0;
    design(i, 1) = xi;
    design(i, 2) = xi * xi;
    rhs(i) = y[static_cast<std::size_t>(i)];
  }
  const Eigen::Vector3d c = design.colPivHouseholderQr().solve(rhs);
  return {c(0), c(1), c(2)};
}

}  // namespace ssa
