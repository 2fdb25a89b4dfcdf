#include "ssa/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "ssa/errors.hpp"
#include "ssa/rng.hpp"
#include "support/rank_sum_exact.hpp"

using namespace ssa;

TEST_CASE("summarize reports the textbook values") {
  const std::vector<double> xs{1.0, 2.0, 3.0};
  const CellSummary s = summarize(xs);
  CHECK(s.count == 3);
  CHECK(s.mean == doctest::Approx(2.0));
  CHECK(s.stddev == doctest::Approx(1.0));
  CHECK(s.min == 1.0);
  CHECK(s.median == 2.0);
  CHECK(s.max == 3.0);
}

TEST_CASE("summarize conventions: lower median, N-1 variance, single point") {
  CHECK(summarize(std::vector<double>{5.0, 1.0, 3.0}).median == 3.0);
  CHECK(summarize(std::vector<double>{1.0, 9.0}).median == 1.0);
  CHECK(summarize(std::vector<double>{1.0, 9.0}).stddev ==
        doctest::Approx(std::sqrt(32.0)));
  const CellSummary one = summarize(std::vector<double>{4.2});
  CHECK(one.stddev == 0.0);
  CHECK(one.mean == 4.2);
  CHECK(one.median == 4.2);
  CHECK_THROWS_AS(summarize({}), std::invalid_argument);
}

TEST_CASE("lower median index points at the earliest holder of the median") {
  const std::vector<double> xs{7.0, 3.0, 3.0, 9.0};
  CHECK(lower_median(xs) == 3.0);
  CHECK(lower_median_index(xs) == 1);
  const std::vector<double> run{2.0, 2.0, 2.0};
  CHECK(lower_median_index(run) == 0);
}

TEST_CASE("success rates count finals at or below each threshold") {
  const std::vector<double> finals{1e-9, 1e-5, 2.0};
  const std::vector<double> thresholds{1e-8, 1e-4, 1.0, 10.0};
  const auto pts = success_ecdf(finals, thresholds);
  REQUIRE(pts.size() == 4);
  CHECK(pts[0].rate == doctest::Approx(1.0 / 3.0));
  CHECK(pts[1].rate == doctest::Approx(2.0 / 3.0));
  CHECK(pts[2].rate == doctest::Approx(2.0 / 3.0));
  CHECK(pts[3].rate == 1.0);
  CHECK(pts[0].threshold == 1e-8);

  // the comparison is inclusive
  const auto inc = success_ecdf(std::vector<double>{1.0}, std::vector<double>{1.0});
  CHECK(inc[0].rate == 1.0);

  CHECK_THROWS_AS(success_ecdf(finals, std::vector<double>{1.0, 0.5}),
                  std::invalid_argument);
  CHECK_THROWS_AS(success_ecdf({}, thresholds), std::invalid_argument);
}

TEST_CASE("rank-sum statistic on fully separated samples") {
  const std::vector<double> a{1.0, 2.0, 3.0}, b{4.0, 5.0, 6.0};
  const RankSumResult r = wilcoxon_rank_sum(a, b, 0.05);
  CHECK(r.rank_sum == 6.0);
  CHECK(r.z == doctest::Approx(-1.7457431218879391).epsilon(1e-12));
  CHECK(r.p_value == doctest::Approx(0.0808555983700523).epsilon(1e-12));
  CHECK(r.verdict == '=');  // 0.081 is not significant at 0.05
  CHECK(exact_rank_p(a, b) == doctest::Approx(0.1));
  CHECK(std::abs(r.p_value - exact_rank_p(a, b)) <= 0.02);
}

TEST_CASE("rank-sum verdicts follow significance and median direction") {
  std::vector<double> low(12), high(12);
  for (int i = 0; i < 12; ++i) {
    low[static_cast<std::size_t>(i)] = i;
    high[static_cast<std::size_t>(i)] = 100 + i;
  }
  CHECK(wilcoxon_rank_sum(low, high, 0.05).verdict == '-');
  CHECK(wilcoxon_rank_sum(high, low, 0.05).verdict == '+');
  CHECK(wilcoxon_rank_sum(low, low, 0.05).verdict == '=');

  const std::vector<double> same(8, 3.0);
  const RankSumResult tied = wilcoxon_rank_sum(same, same, 0.05);
  CHECK(tied.verdict == '=');
  CHECK(tied.p_value == 1.0);
}

TEST_CASE("rank sums of both sides always cover the whole rank mass") {
  RngStream rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> a(6), b(9);
    for (auto& v : a) v = std::floor(10.0 * rng.next_double());
    for (auto& v : b) v = std::floor(10.0 * rng.next_double());
    const double wa = wilcoxon_rank_sum(a, b, 0.05).rank_sum;
    const double wb = wilcoxon_rank_sum(b, a, 0.05).rank_sum;
    const double n = 15.0;
    CHECK(wa + wb == doctest::Approx(n * (n + 1.0) / 2.0));
  }
}

TEST_CASE("rank-sum needs at least three values per side") {
  const std::vector<double> two{1.0, 2.0}, three{1.0, 2.0, 3.0};
  CHECK_THROWS_AS(wilcoxon_rank_sum(two, three, 0.05), std::invalid_argument);
  CHECK_THROWS_AS(wilcoxon_rank_sum(three, two, 0.05), std::invalid_argument);
  CHECK_NOTHROW(wilcoxon_rank_sum(three, three, 0.05));
}

TEST_CASE("tie-corrected variance shrinks the statistic under heavy ties") {
  // hand-checked: a = {1,1,2}, b = {1,2,2} pools to ties {1,1,1} and {2,2,2}
  const std::vector<double> a{1.0, 1.0, 2.0}, b{1.0, 2.0, 2.0};
  const RankSumResult r = wilcoxon_rank_sum(a, b, 0.05);
  // midranks: the three 1s get rank 2, the three 2s get rank 5; W_a = 9
  CHECK(r.rank_sum == 9.0);
  // var = (9/12) * (7 - 48/30) = 4.05, diff = -1.5, cc -> -1
  CHECK(r.z == doctest::Approx(-1.0 / std::sqrt(4.05)).epsilon(1e-12));
}

TEST_CASE("quadratic fit recovers exact and least-squares coefficients") {
  const std::vector<double> x{0.0, 1.0, 2.0}, y{0.0, 1.0, 4.0};
  const auto c = quadratic_fit(x, y);
  CHECK(c[0] == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(c[1] == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(c[2] == doctest::Approx(1.0));

  const std::vector<double> xl{0.0, 1.0, 2.0}, yl{0.0, 1.0, 2.0};
  const auto cl = quadratic_fit(xl, yl);
  CHECK(cl[0] == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(cl[1] == doctest::Approx(1.0));
  CHECK(cl[2] == doctest::Approx(0.0).epsilon(1e-10));

  // overdetermined: noiseless samples of 2 + 3x - x^2
  std::vector<double> xs, ys;
  for (double v : {-2.0, -1.0, 0.0, 1.0, 2.0, 3.0}) {
    xs.push_back(v);
    ys.push_back(2.0 + 3.0 * v - v * v);
  }
  const auto cq = quadratic_fit(xs, ys);
  CHECK(cq[0] == doctest::Approx(2.0));
  CHECK(cq[1] == doctest::Approx(3.0));
  CHECK(cq[2] == doctest::Approx(-1.0));

  CHECK_THROWS_AS(quadratic_fit(std::vector<double>{1.0, 1.0, 1.0, 2.0},
                                std::vector<double>{0.0, 0.0, 0.0, 1.0}),
                  ConfigError);
  CHECK_THROWS_AS(quadratic_fit(std::vector<double>{1.0, 2.0},
                                std::vector<double>{0.0, 1.0}),
                  ConfigError);
  CHECK_THROWS_AS(quadratic_fit(std::vector<double>{1.0, 2.0, 3.0},
                                std::vector<double>{0.0, 1.0}),
                  std::invalid_argument);
}

TEST_CASE("normal approximation tracks exact enumeration on separated data") {
  // two separated clusters of distinct values: the regime the success/failure
  // comparisons operate in, where the small-sample approximation stays honest
  RngStream rng(777);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n1 = 3 + rng.next_index(3), n2 = 3 + rng.next_index(3);
    std::vector<double> a = distinct_cluster(n1, 0, rng);
    std::vector<double> b = distinct_cluster(n2, 100, rng);
    if (rng.next_double() < 0.5) std::swap(a, b);
    const double approx_p = wilcoxon_rank_sum(a, b, 0.05).p_value;
    const double exact_p = exact_rank_p(a, b);
    INFO("trial ", trial, " approx=", approx_p, " exact=", exact_p);
    CHECK(std::abs(approx_p - exact_p) <= 0.02);
    ++checked;
  }
  CHECK(checked == 60);
}
