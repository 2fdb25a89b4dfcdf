#include "ssa/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>

#include "ssa/errors.hpp"
#include "ssa/stats.hpp"

namespace ssa {

namespace {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

int resolve_threads(int requested, std::size_t jobs) {
  int t = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  if (t < 1) t = 1;
  return static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(t), jobs));
}

struct Job {
  std::size_t cell;
  int run;
};

/// Executes `jobs` across a pool; each worker pulls the next index from a
/// shared counter, so the (cell, run) -> result mapping never depends on the
/// thread count.
template <typename Fn>
void run_jobs(const std::vector<Job>& jobs, int threads, Fn&& fn) {
  const int t = resolve_threads(threads, jobs.size());
  if (t <= 1) {
    for (const Job& job : jobs) fn(job);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(t));
  for (int i = 0; i < t; ++i)
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t k = next.fetch_add(1);
        if (k >= jobs.size()) return;
        fn(jobs[k]);
      }
    });
  for (auto& th : pool) th.join();
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t cell, std::uint64_t run) {
  return mix64(mix64(mix64(base) ^ (cell + 1)) ^ (run + 1));
}

std::vector<CellResult> run_experiment(const ExperimentPlan& plan) {
  if (plan.runs < 1) throw ConfigError("experiment needs at least 1 run per cell");
  if (plan.cells.empty()) throw ConfigError("experiment has no cells");

  std::vector<CellResult> results(plan.cells.size());
  std::vector<Job> jobs;
  jobs.reserve(plan.cells.size() * static_cast<std::size_t>(plan.runs));

  for (std::size_t c = 0; c < plan.cells.size(); ++c) {
    CellResult& cell = results[c];
    cell.objective = plan.cells[c];
    if (!cell.objective) throw ConfigError("experiment cell is null");
    SsaParams p = plan.base;
    const int n = cell.objective->dim();
    p.pop = plan.pop.value_or(n);
    p.budget = plan.budget.value_or(static_cast<std::uint64_t>(n) * 10'000ULL);
    try {
      p.validate();
    } catch (const std::exception& e) {
      cell.error = e.what();
      continue;
    }
    cell.params = p;
    cell.records.resize(static_cast<std::size_t>(plan.runs));
    for (int r = 0; r < plan.runs; ++r) jobs.push_back({c, r});
  }

  std::vector<std::string> first_error(plan.cells.size());
  std::vector<std::mutex> error_mu(plan.cells.size());
  run_jobs(jobs, plan.threads, [&](const Job& job) {
    CellResult& cell = results[job.cell];
    SsaParams p = cell.params;
    p.seed = derive_seed(plan.base_seed, static_cast<std::uint64_t>(job.cell),
                         static_cast<std::uint64_t>(job.run));
    try {
      cell.records[static_cast<std::size_t>(job.run)] =
          run(cell.objective, p, plan.trace_stride);
    } catch (const std::exception& e) {
      std::lock_guard lock(error_mu[job.cell]);
      if (first_error[job.cell].empty()) first_error[job.cell] = e.what();
    }
  });

  for (std::size_t c = 0; c < results.size(); ++c)
    if (!first_error[c].empty() && results[c].error.empty()) {
      results[c].error = first_error[c];
      results[c].records.clear();
    }
  return results;
}

std::vector<double> final_fitnesses(const CellResult& cell) {
  std::vector<double> finals;
  finals.reserve(cell.records.size());
  for (const RunRecord& r : cell.records) finals.push_back(r.best_fitness);
  return finals;
}

const RunRecord& median_convergence_trace(std::span<const RunRecord> records) {
  if (records.empty())
    throw std::invalid_argument("median_convergence_trace: no records");
  std::vector<double> finals;
  finals.reserve(records.size());
  for (const RunRecord& r : records) finals.push_back(r.best_fitness);
  return records[lower_median_index(finals)];
}

std::vector<SweepSeries> parameter_sweep(
    const std::vector<std::shared_ptr<const Objective>>& objectives, SweepParam param,
    std::span<const double> values, int repeats, const SsaParams& fixed,
    std::uint64_t base_seed, int threads) {
  if (repeats < 1) throw ConfigError("sweep needs repeats >= 1");
  {
    std::vector<double> distinct(values.begin(), values.end());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() < 3)
      throw ConfigError("sweep needs at least 3 distinct parameter values");
  }
  if (objectives.empty()) throw ConfigError("sweep has no objectives");

  // one cell per (objective, value); cell index orders objective-major so the
  // seed of a cell never depends on which parameter is swept
  const std::size_t nv = values.size();
  std::vector<std::vector<std::vector<double>>> finals(
      objectives.size(), std::vector<std::vector<double>>(nv));
  std::vector<SsaParams> cell_params(objectives.size() * nv);

  std::vector<Job> jobs;
  jobs.reserve(objectives.size() * nv * static_cast<std::size_t>(repeats));
  for (std::size_t o = 0; o < objectives.size(); ++o) {
    if (!objectives[o]) throw ConfigError("sweep objective is null");
    for (std::size_t v = 0; v < nv; ++v) {
      SsaParams p = fixed;
      switch (param) {
        case SweepParam::ra: p.ra = values[v]; break;
        case SweepParam::pc: p.pc = values[v]; break;
        case SweepParam::pm: p.pm = values[v]; break;
      }
      p.validate();
      const std::size_t cell = o * nv + v;
      cell_params[cell] = p;
      finals[o][v].resize(static_cast<std::size_t>(repeats));
      for (int r = 0; r < repeats; ++r)
        jobs.push_back({cell, r});
    }
  }

  std::vector<std::string> errors(cell_params.size());
  std::vector<std::mutex> error_mu(cell_params.size());
  run_jobs(jobs, threads, [&](const Job& job) {
    const std::size_t o = job.cell / nv, v = job.cell % nv;
    SsaParams p = cell_params[job.cell];
    p.seed = derive_seed(base_seed, static_cast<std::uint64_t>(job.cell),
                         static_cast<std::uint64_t>(job.run));
    try {
      finals[o][v][static_cast<std::size_t>(job.run)] =
          run(objectives[o], p).best_fitness;
    } catch (const std::exception& e) {
      std::lock_guard lock(error_mu[job.cell]);
      if (errors[job.cell].empty()) errors[job.cell] = e.what();
    }
  });
  for (const std::string& e : errors)
    if (!e.empty()) throw BaselineError("sweep run failed: " + e);

  std::vector<SweepSeries> out;
  out.reserve(objectives.size());
  for (std::size_t o = 0; o < objectives.size(); ++o) {
    SweepSeries s;
    s.function = objectives[o]->name();
    s.values.assign(values.begin(), values.end());
    s.means.reserve(nv);
    for (std::size_t v = 0; v < nv; ++v)
      s.means.push_back(summarize(finals[o][v]).mean);
    s.coeffs = quadratic_fit(s.values, s.means);
    s.fitted.reserve(nv);
    for (double x : s.values)
      s.fitted.push_back(s.coeffs[0] + s.coeffs[1] * x + s.coeffs[2] * x * x);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace ssa
