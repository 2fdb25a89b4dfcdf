#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ssa/engine.hpp"
#include "ssa/objective.hpp"
#include "ssa/params.hpp"

namespace ssa {

/// A batch of benchmark cells (objective x dimension is baked into each
/// Objective) run under a common protocol. Population and budget default to
/// the rules pop = n and budget = 10^4 * n unless overridden.
struct ExperimentPlan {
  std::vector<std::shared_ptr<const Objective>> cells;
  int runs = 51;
  SsaParams base;  ///< ra/pc/pm/baseline/target template; pop and budget come from the rules below
  std::optional<int> pop;                ///< override the pop = n rule
  std::optional<std::uint64_t> budget;   ///< override the 10^4 * n rule
  std::uint64_t base_seed = 0;
  std::uint64_t trace_stride = 0;        ///< 0: budget/200
  int threads = 0;                       ///< 0: hardware concurrency
};

struct CellResult {
  std::shared_ptr<const Objective> objective;
  SsaParams params;  ///< resolved parameters actually used
  std::vector<RunRecord> records;
  std::string error;  ///< nonempty if this cell failed; other cells still run
};

/// The per-run seed hash: chained splitmix64 finalizer rounds,
///   mix(mix(mix(base) ^ (cell + 1)) ^ (run + 1)),
/// so adding cells or runs never perturbs other cells' seeds.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t cell, std::uint64_t run);

/// Runs runs x cells independent engine runs with derived seeds. Runs may
/// execute concurrently (each owns a private stream); results are keyed by
/// run index, so the outcome is identical for any thread count.
std::vector<CellResult> run_experiment(const ExperimentPlan& plan);

/// Per-run final fitness values of a cell, in run order.
std::vector<double> final_fitnesses(const CellResult& cell);

/// The record whose final best is the lower median of the cell (the
/// convergence curve worth plotting).
const RunRecord& median_convergence_trace(std::span<const RunRecord> records);

enum class SweepParam { ra, pc, pm };

/// One swept function: mean final fitness per parameter value plus the
/// second-order polynomial regression of those means.
struct SweepSeries {
  std::string function;
  std::vector<double> values;
  std::vector<double> means;
  std::array<double, 3> coeffs{};  ///< c0 + c1 v + c2 v^2
  std::vector<double> fitted;      ///< the fit evaluated at `values`
};

/// Sweep protocol: one parameter varies over `values`, the others stay at
/// `fixed` (which also supplies pop, budget, baseline). Each (objective,
/// value) cell runs `repeats` times with seeds derived from base_seed.
/// Throws ConfigError with fewer than 3 distinct values (fit underdetermined)
/// or repeats < 1.
std::vector<SweepSeries> parameter_sweep(
    const std::vector<std::shared_ptr<const Objective>>& objectives, SweepParam param,
    std::span<const double> values, int repeats, const SsaParams& fixed,
    std::uint64_t base_seed, int threads = 0);

}  // namespace ssa
