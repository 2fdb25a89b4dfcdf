#include "ssa/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "scripted_rng.hpp"
#include "ssa/errors.hpp"

using namespace ssa;

namespace {

Vibration vib(std::vector<double> src, double intensity) {
  Vibration v;
  v.source = std::move(src);
  v.intensity = intensity;
  return v;
}

std::shared_ptr<const Objective> sphere2() {
  return Objective::custom("sphere2", SearchSpace::symmetric(2, 100.0),
                           [](std::span<const double> x) {
                             double s = 0;
                             for (double v : x) s += v * v;
                             return s;
                           });
}

}  // namespace

TEST_CASE("select_target replaces a weaker stored target and resets inactivity") {
  const Vibration current = vib({0.0, 0.0}, 0.0);
  const std::vector<Vibration> received{vib({1.0, 1.0}, 0.2), vib({2.0, 2.0}, 0.5)};
  const TargetChoice c = select_target(current, 7, received);
  CHECK(c.changed);
  CHECK(c.inactivity == 0);
  CHECK(c.target.intensity == 0.5);
  CHECK(c.target.source == std::vector<double>{2.0, 2.0});
}

TEST_CASE("select_target keeps a stronger stored target and increments inactivity") {
  const Vibration current = vib({9.0, 9.0}, 2.0);
  const std::vector<Vibration> received{vib({1.0, 1.0}, 1.5), vib({2.0, 2.0}, 0.1)};
  const TargetChoice c = select_target(current, 3, received);
  CHECK_FALSE(c.changed);
  CHECK(c.inactivity == 4);
  CHECK(c.target.intensity == 2.0);
  CHECK(c.target.source == std::vector<double>{9.0, 9.0});
}

TEST_CASE("select_target keeps the old target on an exact tie") {
  const Vibration current = vib({9.0, 9.0}, 1.5);
  const std::vector<Vibration> received{vib({1.0, 1.0}, 1.5)};
  const TargetChoice c = select_target(current, 0, received);
  CHECK_FALSE(c.changed);
  CHECK(c.inactivity == 1);
  CHECK(c.target.source == std::vector<double>{9.0, 9.0});
}

TEST_CASE("select_target rejects an empty received list") {
  const Vibration current = vib({0.0}, 0.0);
  CHECK_THROWS_AS(select_target(current, 0, {}), std::invalid_argument);
}

TEST_CASE("mask is never resampled at zero inactivity") {
  std::vector<std::uint8_t> mask{1, 0, 1};
  ScriptedRng rng;
  rng.doubles = {0.9999};  // only the gate draw is consumed
  CHECK_FALSE(maybe_update_mask(mask, 0, 0.7, 0.1, rng));
  CHECK(mask == std::vector<std::uint8_t>{1, 0, 1});
  CHECK(rng.doubles.empty());
}

TEST_CASE("mask resample fires when the gate draw exceeds pc^inactivity") {
  std::vector<std::uint8_t> mask{0, 0, 0};
  ScriptedRng rng;
  // gate 0.8 > 0.7^1, then per-bit draws against pm = 0.1
  rng.doubles = {0.8, 0.05, 0.5, 0.95};
  CHECK(maybe_update_mask(mask, 1, 0.7, 0.1, rng));
  CHECK(mask == std::vector<std::uint8_t>{1, 0, 0});
  CHECK(rng.doubles.empty());
  CHECK(rng.indices.empty());
}

TEST_CASE("mask keeps its value when the gate draw stays under pc^inactivity") {
  std::vector<std::uint8_t> mask{0, 1, 0};
  ScriptedRng rng;
  rng.doubles = {0.48};  // 0.48 < 0.7^2 = 0.49
  CHECK_FALSE(maybe_update_mask(mask, 2, 0.7, 0.1, rng));
  CHECK(mask == std::vector<std::uint8_t>{0, 1, 0});
}

TEST_CASE("all-zero resample gets exactly one bit set at a scripted index") {
  std::vector<std::uint8_t> mask{1, 1, 1, 1};
  ScriptedRng rng;
  rng.doubles = {0.9, 0.5, 0.5, 0.5, 0.5};
  rng.indices = {1};
  CHECK(maybe_update_mask(mask, 5, 0.7, 0.1, rng));
  CHECK(mask == std::vector<std::uint8_t>{0, 1, 0, 0});
}

TEST_CASE("all-one resample gets exactly one bit cleared at a scripted index") {
  std::vector<std::uint8_t> mask{0, 0, 0};
  ScriptedRng rng;
  rng.doubles = {0.9, 0.05, 0.05, 0.05};
  rng.indices = {2};
  CHECK(maybe_update_mask(mask, 5, 0.7, 0.9, rng));
  CHECK(mask == std::vector<std::uint8_t>{1, 1, 0});
}

TEST_CASE("single-dimension masks skip both repair rules") {
  std::vector<std::uint8_t> mask{0};
  ScriptedRng rng;
  rng.doubles = {0.9, 0.5};  // resample to 0; no repair index draw follows
  CHECK(maybe_update_mask(mask, 3, 0.7, 0.1, rng));
  CHECK(mask == std::vector<std::uint8_t>{0});
  CHECK(rng.indices.empty());

  rng.doubles = {0.9, 0.01};  // resample to 1; still no repair
  CHECK(maybe_update_mask(mask, 3, 0.7, 0.1, rng));
  CHECK(mask == std::vector<std::uint8_t>{1});
}

TEST_CASE("empirical mask change rate tracks 1 - pc^inactivity") {
  RngStream rng(2024);
  const double pc = 0.7;
  const int trials = 100000;
  int changed = 0;
  std::vector<std::uint8_t> mask(4, 0);
  for (int i = 0; i < trials; ++i) {
    mask.assign(4, 0);
    if (maybe_update_mask(mask, 2, pc, 0.1, rng)) ++changed;
  }
  const double expect = 1.0 - std::pow(pc, 2.0);  // 0.51
  const double sigma = std::sqrt(expect * (1.0 - expect) / trials);
  CHECK(std::abs(static_cast<double>(changed) / trials - expect) < 3.0 * sigma);
}

TEST_CASE("following position copies target dims through zero mask bits") {
  SpiderState s;
  s.position = {0.0, 0.0};
  s.mask = {0, 1};
  s.target = vib({5.0, 5.0}, 1.0);
  std::vector<SpiderState> pop(1);
  pop[0].position = {9.0, 9.0};
  ScriptedRng rng;
  rng.indices = {0};
  const auto fo = following_position(s, pop, rng);
  CHECK(fo == std::vector<double>{5.0, 9.0});
}

TEST_CASE("following position with an all-zero mask is the target source") {
  SpiderState s;
  s.position = {1.0, 2.0, 3.0};
  s.mask = {0, 0, 0};
  s.target = vib({4.0, 5.0, 6.0}, 1.0);
  ScriptedRng rng;  // no draws allowed
  const auto fo = following_position(s, std::vector<SpiderState>(3), rng);
  CHECK(fo == std::vector<double>{4.0, 5.0, 6.0});
}

TEST_CASE("following position re-draws the spider index per masked dimension") {
  SpiderState s;
  s.position = {0.0, 0.0, 0.0};
  s.mask = {1, 1, 0};
  s.target = vib({-1.0, -2.0, -3.0}, 1.0);
  std::vector<SpiderState> pop(3);
  pop[0].position = {10.0, 11.0, 12.0};
  pop[1].position = {20.0, 21.0, 22.0};
  pop[2].position = {30.0, 31.0, 32.0};
  ScriptedRng rng;
  rng.indices = {2, 0};  // dim 0 from spider 2, dim 1 from spider 0
  const auto fo = following_position(s, pop, rng);
  CHECK(fo == std::vector<double>{30.0, 11.0, -3.0});
}

TEST_CASE("random walk: zero previous movement leaves only the approach term") {
  const std::vector<double> pos{0.0, 0.0}, prev{0.0, 0.0}, fo{2.0, 4.0};
  ScriptedRng rng;
  rng.doubles = {0.123, 0.5, 0.5};  // scalar draw is irrelevant here
  CHECK(random_walk(pos, prev, fo, rng) == std::vector<double>{1.0, 2.0});
}

TEST_CASE("random walk: stationary following point leaves only the inertia term") {
  const std::vector<double> pos{1.0, 1.0}, prev{1.0, 1.0}, fo{1.0, 1.0};
  ScriptedRng rng;
  rng.doubles = {0.5, 0.77, 0.12};  // approach term vanishes whatever R is
  CHECK(random_walk(pos, prev, fo, rng) == std::vector<double>{1.5, 1.5});
}

TEST_CASE("random walk combines inertia and approach with the scripted draws") {
  // previous movement (0,0)-(-2,0) = (2,0); 0.25 of it plus 0.5 of (4,0)
  const std::vector<double> pos{0.0, 0.0}, prev{2.0, 0.0}, fo{4.0, 0.0};
  ScriptedRng rng;
  rng.doubles = {0.25, 0.5, 0.9};
  CHECK(random_walk(pos, prev, fo, rng) == std::vector<double>{2.5, 0.0});
}

TEST_CASE("random walk draws the scalar before the per-dimension vector") {
  const std::vector<double> pos{0.0}, prev{1.0}, fo{1.0};
  ScriptedRng rng;
  rng.doubles = {0.5, 0.25};
  // scalar-first order: 0 + 1*0.5 + (1-0)*0.25 = 0.75
  CHECK(random_walk(pos, prev, fo, rng) == std::vector<double>{0.75});
}

TEST_CASE("reflection pulls an upper violation between bound and previous point") {
  const SearchSpace space = SearchSpace::symmetric(1, 100.0);
  std::vector<double> proposed{120.0};
  const std::vector<double> previous{50.0};
  ScriptedRng rng;
  rng.doubles = {0.5};
  reflect_into_bounds(proposed, previous, space, rng);
  CHECK(proposed == std::vector<double>{75.0});
}

TEST_CASE("reflection pulls a lower violation between bound and previous point") {
  const SearchSpace space = SearchSpace::symmetric(1, 100.0);
  std::vector<double> proposed{-130.0};
  const std::vector<double> previous{-50.0};
  ScriptedRng rng;
  rng.doubles = {0.5};
  reflect_into_bounds(proposed, previous, space, rng);
  CHECK(proposed == std::vector<double>{-75.0});
}

TEST_CASE("reflection leaves in-bounds coordinates alone and draws nothing for them") {
  const SearchSpace space = SearchSpace::symmetric(3, 100.0);
  std::vector<double> proposed{1.0, 150.0, -2.0};
  const std::vector<double> previous{0.0, 80.0, 0.0};
  ScriptedRng rng;
  rng.doubles = {0.25};  // exactly one violated dimension
  reflect_into_bounds(proposed, previous, space, rng);
  CHECK(proposed == std::vector<double>{1.0, 95.0, -2.0});
  CHECK(rng.doubles.empty());
}

TEST_CASE("reflection result is always feasible for random draws") {
  const SearchSpace space({-3.0, 10.0}, {5.0, 20.0});
  RngStream rng(99);
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<double> previous{-3.0 + 8.0 * rng.next_double(),
                                 10.0 + 10.0 * rng.next_double()};
    std::vector<double> proposed{-50.0 + 100.0 * rng.next_double(),
                                 -40.0 + 120.0 * rng.next_double()};
    reflect_into_bounds(proposed, previous, space, rng);
    CHECK(space.contains(proposed));
  }
}

TEST_CASE("reflection rejects an infeasible previous position") {
  const SearchSpace space = SearchSpace::symmetric(1, 100.0);
  std::vector<double> proposed{0.0};
  const std::vector<double> previous{150.0};
  RngStream rng(1);
  CHECK_THROWS_AS(reflect_into_bounds(proposed, previous, space, rng),
                  std::invalid_argument);
}

TEST_CASE("engine seeds the population but evaluates nothing before stepping") {
  SsaParams p;
  p.pop = 6;
  p.seed = 7;
  Engine e(sphere2(), p);
  CHECK(e.evaluations() == 0);
  CHECK(e.iterations() == 0);
  CHECK(std::isinf(e.best_fitness()));
  CHECK(e.population().size() == 6);
  for (const SpiderState& s : e.population()) {
    CHECK(e.space().contains(s.position));
    CHECK(s.target.source == s.position);
    CHECK(s.target.intensity == 0.0);
    CHECK(s.inactivity == 0);
    CHECK(std::count(s.mask.begin(), s.mask.end(), 1) == 0);
    CHECK(s.prev_move == std::vector<double>(2, 0.0));
  }
}

TEST_CASE("initial placement consumes draws spider-major, dimension-minor") {
  SsaParams p;
  p.pop = 3;
  p.seed = 123;
  Engine e(sphere2(), p);
  RngStream ref(123);
  for (const SpiderState& s : e.population())
    for (double x : s.position)
      CHECK(x == -100.0 + 200.0 * ref.next_double());
}

TEST_CASE("each step costs exactly one evaluation per spider") {
  SsaParams p;
  p.pop = 10;
  p.seed = 3;
  Engine e(sphere2(), p);
  for (int t = 1; t <= 5; ++t) {
    e.step();
    CHECK(e.evaluations() == static_cast<std::uint64_t>(10 * t));
    CHECK(e.iterations() == static_cast<std::uint64_t>(t));
  }
}

TEST_CASE("positions stay in bounds and best-so-far never worsens") {
  SsaParams p;
  p.pop = 8;
  p.seed = 11;
  Engine e(sphere2(), p);
  double last = std::numeric_limits<double>::infinity();
  for (int t = 0; t < 50; ++t) {
    e.step();
    CHECK(e.best_fitness() <= last);
    last = e.best_fitness();
    for (const SpiderState& s : e.population()) CHECK(e.space().contains(s.position));
  }
}

TEST_CASE("equal seeds give bit-identical engines after many steps") {
  SsaParams p;
  p.pop = 7;
  p.seed = 20240817;
  Engine a(sphere2(), p), b(sphere2(), p);
  for (int t = 0; t < 40; ++t) {
    a.step();
    b.step();
  }
  CHECK(a.best_fitness() == b.best_fitness());
  CHECK(a.best_position() == b.best_position());
  for (std::size_t i = 0; i < a.population().size(); ++i) {
    CHECK(a.population()[i].position == b.population()[i].position);
    CHECK(a.population()[i].mask == b.population()[i].mask);
    CHECK(a.population()[i].inactivity == b.population()[i].inactivity);
    CHECK(a.population()[i].prev_move == b.population()[i].prev_move);
  }
}

TEST_CASE("a constant objective completes and reports the constant") {
  auto flat = Objective::custom("flat5", SearchSpace::symmetric(3, 10.0),
                                [](std::span<const double>) { return 5.0; });
  SsaParams p;
  p.pop = 5;
  p.seed = 2;
  Engine e(flat, p);
  for (int t = 0; t < 30; ++t) e.step();
  CHECK(e.best_fitness() == 5.0);
  for (const SpiderState& s : e.population()) CHECK(e.space().contains(s.position));
}

TEST_CASE("inactivity counters reset exactly when the target changes") {
  SsaParams p;
  p.pop = 6;
  p.seed = 31;
  Engine e(sphere2(), p);
  std::vector<std::uint64_t> before(6, 0);
  for (int t = 0; t < 25; ++t) {
    for (std::size_t i = 0; i < 6; ++i) before[i] = e.population()[i].inactivity;
    e.step();
    for (std::size_t i = 0; i < 6; ++i) {
      const std::uint64_t after = e.population()[i].inactivity;
      const bool reset = after == 0;
      const bool grew = after == before[i] + 1;
      CHECK((reset || grew));
    }
  }
}

TEST_CASE("run with budget equal to population returns the best initial spider") {
  SsaParams p;
  p.pop = 12;
  p.budget = 12;
  p.seed = 555;
  const RunRecord rec = run(sphere2(), p);
  CHECK(rec.evaluations == 12);

  // reproduce the initial placement and take its minimum by hand
  RngStream ref(555);
  double best = std::numeric_limits<double>::infinity();
  for (int s = 0; s < 12; ++s) {
    double a = -100.0 + 200.0 * ref.next_double();
    double b = -100.0 + 200.0 * ref.next_double();
    best = std::min(best, a * a + b * b);
  }
  CHECK(rec.best_fitness == best);
}

TEST_CASE("run rejects a budget smaller than the population") {
  SsaParams p;
  p.pop = 10;
  p.budget = 9;
  CHECK_THROWS_AS(run(sphere2(), p), ConfigError);
}

TEST_CASE("run stops early once the target fitness is reached") {
  auto flat = Objective::custom("flat", SearchSpace::symmetric(2, 1.0),
                                [](std::span<const double>) { return 5.0; });
  SsaParams p;
  p.pop = 4;
  p.budget = 4000;
  p.target = 10.0;
  const RunRecord rec = run(flat, p);
  CHECK(rec.evaluations == 4);  // first pass already meets the target
  CHECK(rec.best_fitness == 5.0);
}

TEST_CASE("run leaves a trace that ends at the final evaluation count") {
  SsaParams p;
  p.pop = 10;
  p.budget = 1000;
  p.seed = 77;
  const RunRecord rec = run(sphere2(), p, 100);
  REQUIRE(!rec.trace.empty());
  CHECK(rec.trace.back().evaluations == rec.evaluations);
  CHECK(rec.trace.back().best == rec.best_fitness);
  for (std::size_t i = 1; i < rec.trace.size(); ++i) {
    CHECK(rec.trace[i].evaluations > rec.trace[i - 1].evaluations);
    CHECK(rec.trace[i].best <= rec.trace[i - 1].best);
  }
}

TEST_CASE("identical run calls are byte-identical") {
  SsaParams p;
  p.pop = 9;
  p.budget = 2700;
  p.seed = 31337;
  const RunRecord a = run(sphere2(), p, 300);
  const RunRecord b = run(sphere2(), p, 300);
  CHECK(a.best_fitness == b.best_fitness);
  CHECK(a.best_position == b.best_position);
  CHECK(a.evaluations == b.evaluations);
  REQUIRE(a.trace.size() == b.trace.size());
  for (std::size_t i = 0; i < a.trace.size(); ++i) {
    CHECK(a.trace[i].evaluations == b.trace[i].evaluations);
    CHECK(a.trace[i].best == b.trace[i].best);
  }
}

TEST_CASE("parameter validation rejects out-of-range settings") {
  SsaParams p;
  CHECK_NOTHROW(p.validate());
  SsaParams bad = p;
  bad.pop = 1;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = p;
  bad.ra = 0.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = p;
  bad.pc = 1.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = p;
  bad.pm = 0.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = p;
  bad.budget = 5;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}
