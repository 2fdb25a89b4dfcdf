#include "ssa/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "ssa/errors.hpp"

namespace ssa {

TargetChoice select_target(const Vibration& current, std::uint64_t inactivity,
                           std::span<const Vibration> received) {
  if (received.empty())
    throw std::invalid_argument("select_target: received vibration list is empty");
  std::size_t best = 0;
  for (std::size_t k = 1; k < received.size(); ++k)
    if (received[k].intensity > received[best].intensity) best = k;
  TargetChoice choice;
  if (received[best].intensity > current.intensity) {
    choice.target = received[best];
    choice.inactivity = 0;
    choice.changed = true;
  } else {
    choice.target = current;
    choice.inactivity = inactivity + 1;
    choice.changed = false;
  }
  return choice;
}

Engine::Engine(std::shared_ptr<const Objective> objective, const SsaParams& params)
    : objective_(std::move(objective)),
      params_(params),
      rng_(params.seed),
      best_fit_(std::numeric_limits<double>::infinity()) {
  if (!objective_) throw ConfigError("engine: objective is null");
  params_.validate();
  const int n = objective_->dim();
  const auto& space = objective_->space();
  spiders_.resize(static_cast<std::size_t>(params_.pop));
  for (auto& s : spiders_) {
    s.position.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      s.position[static_cast<std::size_t>(i)] =
          space.lower(i) + rng_.next_double() * (space.upper(i) - space.lower(i));
    s.target.source = s.position;
    s.target.intensity = 0.0;
    s.inactivity = 0;
    s.mask.assign(static_cast<std::size_t>(n), 0);
    s.prev_move.assign(static_cast<std::size_t>(n), 0.0);
  }
  emitted_.resize(spiders_.size());
  received_.resize(spiders_.size());
  staged_.resize(spiders_.size());
}

void Engine::step() {
  const std::size_t pop = spiders_.size();
  const std::size_t n = static_cast<std::size_t>(objective_->dim());

  // (a) evaluation pass over current positions
  for (auto& s : spiders_) {
    s.fitness = objective_->value(s.position, rng_);
    if (s.fitness < best_fit_) {
      best_fit_ = s.fitness;
      best_pos_ = s.position;
    }
  }
  evals_ += pop;

  // (b) vibrations emitted from the pre-move positions
  for (std::size_t k = 0; k < pop; ++k)
    emitted_[k] = source_intensity(spiders_[k].fitness, params_.intensity_base);

  // (c) population spread: mean over dimensions of the per-dimension std
  double sigma_sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double mean = 0.0;
    for (const auto& s : spiders_) mean += s.position[j];
    mean /= static_cast<double>(pop);
    double var = 0.0;
    for (const auto& s : spiders_) {
      const double d = s.position[j] - mean;
      var += d * d;
    }
    sigma_sum += std::sqrt(var / static_cast<double>(pop));
  }
  sigma_mean_ = sigma_sum / static_cast<double>(n);

  // (d) per-spider update against the frozen snapshot
  for (std::size_t k = 0; k < pop; ++k) {
    received_[k].source = spiders_[k].position;
    received_[k].intensity = emitted_[k];
  }
  for (std::size_t i = 0; i < pop; ++i) {
    auto& s = spiders_[i];
    for (std::size_t k = 0; k < pop; ++k)
      received_[k].intensity =
          emitted_[k] * attenuation_factor(
                            manhattan_distance(spiders_[k].position, s.position),
                            sigma_mean_, params_.ra);
    TargetChoice choice = select_target(s.target, s.inactivity, received_);
    s.target = std::move(choice.target);
    s.inactivity = choice.inactivity;
    maybe_update_mask(s.mask, s.inactivity, params_.pc, params_.pm, rng_);
    const std::vector<double> follow = following_position(s, spiders_, rng_);
    std::vector<double> next = random_walk(s.position, s.prev_move, follow, rng_);
    reflect_into_bounds(next, s.position, objective_->space(), rng_);
    staged_[i] = std::move(next);
  }

  // (e) commit
  for (std::size_t i = 0; i < pop; ++i) {
    auto& s = spiders_[i];
    for (std::size_t j = 0; j < n; ++j) s.prev_move[j] = staged_[i][j] - s.position[j];
    s.position = std::move(staged_[i]);
  }
  ++t_;
}

RunRecord run(std::shared_ptr<const Objective> objective, const SsaParams& params,
              std::uint64_t trace_stride) {
  params.validate();
  Engine engine(std::move(objective), params);
  const std::uint64_t stride =
      trace_stride > 0 ? trace_stride : std::max<std::uint64_t>(1, params.budget / 200);

  RunRecord record;
  record.seed = params.seed;
  std::uint64_t next_mark = stride;
  while (engine.evaluations() + static_cast<std::uint64_t>(params.pop) <= params.budget) {
    engine.step();
    if (engine.evaluations() >= next_mark) {
      record.trace.push_back({engine.evaluations(), engine.best_fitness()});
      next_mark = (engine.evaluations() / stride + 1) * stride;
    }
    if (params.target && engine.best_fitness() <= *params.target) break;
  }
  if (record.trace.empty() || record.trace.back().evaluations != engine.evaluations())
    record.trace.push_back({engine.evaluations(), engine.best_fitness()});
  record.best_fitness = engine.best_fitness();
  record.best_position = engine.best_position();
  record.evaluations = engine.evaluations();
  return record;
}

}  // namespace ssa
