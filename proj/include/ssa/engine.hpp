#pragma once

#include <cmath>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include "ssa/objective.hpp"
#include "ssa/params.hpp"
#include "ssa/rng.hpp"
#include "ssa/search_space.hpp"
#include "ssa/spider.hpp"
#include "ssa/vibration.hpp"

namespace ssa {

/// Result of weighing the strongest received vibration against the stored
/// target: either the target is replaced (inactivity resets to 0) or kept
/// (inactivity grows by one).
struct TargetChoice {
  Vibration target;
  std::uint64_t inactivity = 0;
  bool changed = false;
};

/// Strict-greater comparison against the stored intensity; ties keep the old
/// target. `received` carries attenuated-at-receiver intensities, one entry
/// per spider including the receiver itself.
/// Throws std::invalid_argument on an empty list.
TargetChoice select_target(const Vibration& current, std::uint64_t inactivity,
                           std::span<const Vibration> received);

/// With probability 1 - pc^inactivity, resample every bit independently to 1
/// with probability pm, then repair degenerate results: all-zeros gets one
/// uniformly random bit set, all-ones gets one uniformly random bit cleared.
/// Returns whether a resample happened. Draw order: one gate draw, then (on
/// resample) one draw per bit, then at most one repair index.
/// For n == 1 both repair rules are vacuous and the sampled bit is kept.
template <UniformSource R>
bool maybe_update_mask(std::vector<std::uint8_t>& mask, std::uint64_t inactivity,
                       double pc, double pm, R& rng) {
  const double keep = std::pow(pc, static_cast<double>(inactivity));
  if (!(rng.next_double() > keep)) return false;
  const std::size_t n = mask.size();
  std::size_t ones = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mask[i] = rng.next_double() < pm ? 1 : 0;
    ones += mask[i];
  }
  if (n > 1) {
    if (ones == 0)
      mask[rng.next_index(n)] = 1;
    else if (ones == n)
      mask[rng.next_index(n)] = 0;
  }
  return true;
}

/// Composite point the spider walks toward: target-source coordinates where
/// the mask bit is 0, and the same coordinate of a uniformly chosen spider
/// (self included, index re-drawn per masked dimension, in dimension order)
/// where it is 1. `snapshot` is the pre-move population of this iteration.
template <UniformSource R>
std::vector<double> following_position(const SpiderState& s,
                                       std::span<const SpiderState> snapshot, R& rng) {
  const std::size_t n = s.position.size();
  std::vector<double> fo(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (s.mask[i])
      fo[i] = snapshot[rng.next_index(snapshot.size())].position[i];
    else
      fo[i] = s.target.source[i];
  }
  return fo;
}

/// One walk step: keep a random portion of the previous movement (one scalar
/// draw shared across dimensions) and approach the following position by an
/// independent random fraction per dimension. Draw order: the scalar first,
/// then one draw per dimension.
template <UniformSource R>
std::vector<double> random_walk(std::span<const double> pos,
                                std::span<const double> prev_move,
                                std::span<const double> follow, R& rng) {
  std::vector<double> next(pos.size());
  const double r = rng.next_double();
  for (std::size_t i = 0; i < pos.size(); ++i)
    next[i] = pos[i] + prev_move[i] * r + (follow[i] - pos[i]) * rng.next_double();
  return next;
}

/// Reflecting constraint handling: a coordinate past a bound lands at a
/// random point between that bound and the previous (feasible) coordinate,
/// with a fresh draw per violated dimension in dimension order. The result is
/// always feasible. Throws std::invalid_argument if `previous` is infeasible.
template <UniformSource R>
void reflect_into_bounds(std::vector<double>& proposed, std::span<const double> previous,
                         const SearchSpace& space, R& rng) {
  if (!space.contains(previous))
    throw std::invalid_argument("reflect_into_bounds: previous position is out of bounds");
  for (int i = 0; i < space.dim(); ++i) {
    const std::size_t k = static_cast<std::size_t>(i);
    if (proposed[k] > space.upper(i))
      proposed[k] = space.upper(i) - rng.next_double() * (space.upper(i) - previous[k]);
    else if (proposed[k] < space.lower(i))
      proposed[k] = space.lower(i) + rng.next_double() * (previous[k] - space.lower(i));
  }
}

/// The iteration machine. One instance owns one RNG stream; a run is strictly
/// sequential, and the draw order (documented on step()) is part of the
/// reproducibility contract. Instances are independent, so concurrent runs
/// just use separate engines.
class Engine {
public:
  /// Validates params, places the population uniformly at random (spider
  /// major, dimension minor draw order), and zeroes all memories; the initial
  /// target of each spider is its own position with intensity 0. No fitness
  /// is evaluated until the first step().
  Engine(std::shared_ptr<const Objective> objective, const SsaParams& params);

  /// One full iteration:
  ///  (a) evaluate every spider at its current position (population order;
  ///      this is where f5's noise draws happen) and update best-so-far;
  ///  (b) emit vibration intensities from the pre-move positions;
  ///  (c) recompute the per-dimension spread and its mean;
  ///  (d) per spider in population order: receive all attenuated vibrations,
  ///      select the target, maybe resample the mask, build the following
  ///      position, walk, reflect into bounds — staging the new position so
  ///      every spider sees the same pre-move snapshot;
  ///  (e) commit positions and movement deltas, advance the iteration count.
  void step();

  std::uint64_t iterations() const { return t_; }
  std::uint64_t evaluations() const { return evals_; }
  const std::vector<SpiderState>& population() const { return spiders_; }
  const SearchSpace& space() const { return objective_->space(); }
  const SsaParams& params() const { return params_; }

  /// +inf until the first step has evaluated something.
  double best_fitness() const { return best_fit_; }
  const std::vector<double>& best_position() const { return best_pos_; }

  /// Mean per-dimension position spread at the last vibration pass.
  double sigma_mean() const { return sigma_mean_; }

private:
  std::shared_ptr<const Objective> objective_;
  SsaParams params_;
  RngStream rng_;
  std::vector<SpiderState> spiders_;
  std::vector<double> best_pos_;
  double best_fit_;
  double sigma_mean_ = 0.0;
  std::uint64_t t_ = 0;
  std::uint64_t evals_ = 0;
  // per-iteration scratch, kept to avoid reallocation
  std::vector<double> emitted_;
  std::vector<Vibration> received_;
  std::vector<std::vector<double>> staged_;
};

struct TraceSample {
  std::uint64_t evaluations = 0;
  double best = 0.0;
};

/// Everything a single run produces. The trace is sampled on an FE stride and
/// always ends with the final (evaluations, best) point.
struct RunRecord {
  std::uint64_t seed = 0;
  double best_fitness = 0.0;
  std::vector<double> best_position;
  std::uint64_t evaluations = 0;
  std::vector<TraceSample> trace;
};

/// Full run: init, then step while another evaluation pass fits in the budget
/// and the optional target fitness is unreached. trace_stride 0 means
/// budget/200. Throws ConfigError if budget < pop.
RunRecord run(std::shared_ptr<const Objective> objective, const SsaParams& params,
              std::uint64_t trace_stride = 0);

}  // namespace ssa
