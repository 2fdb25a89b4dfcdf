// Python bindings for the optimizer core: parameters, objectives, single
// runs, the stepping engine, descriptive statistics and the rank-sum test.
// Experiment batches and CSV plumbing stay in the CLI.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <memory>
#include <span>
#include <vector>

#include "ssa/engine.hpp"
#include "ssa/errors.hpp"
#include "ssa/experiment.hpp"
#include "ssa/objective.hpp"
#include "ssa/stats.hpp"
#include "ssa/transform_data.hpp"

namespace py = pybind11;
using namespace ssa;

PYBIND11_MODULE(_core, m) {
  m.doc() = "social spider optimizer core";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<BaselineError>(m, "BaselineError", PyExc_RuntimeError);

  py::class_<SsaParams>(m, "Params")
      .def(py::init<>())
      .def_readwrite("pop", &SsaParams::pop)
      .def_readwrite("ra", &SsaParams::ra)
      .def_readwrite("pc", &SsaParams::pc)
      .def_readwrite("pm", &SsaParams::pm)
      .def_readwrite("intensity_base", &SsaParams::intensity_base)
      .def_readwrite("budget", &SsaParams::budget)
      .def_readwrite("target", &SsaParams::target)
      .def_readwrite("seed", &SsaParams::seed)
      .def("validate", &SsaParams::validate)
      .def("__repr__", [](const SsaParams& p) {
        return "Params(pop=" + std::to_string(p.pop) + ", ra=" + std::to_string(p.ra) +
               ", pc=" + std::to_string(p.pc) + ", pm=" + std::to_string(p.pm) +
               ", budget=" + std::to_string(p.budget) +
               ", seed=" + std::to_string(p.seed) + ")";
      });

  py::class_<SearchSpace>(m, "SearchSpace")
      .def(py::init<std::vector<double>, std::vector<double>>(), py::arg("lower"),
           py::arg("upper"))
      .def_static("symmetric", &SearchSpace::symmetric, py::arg("dim"),
                  py::arg("half_width"))
      .def_property_readonly("dim", &SearchSpace::dim)
      .def_property_readonly("lower", &SearchSpace::lower_bounds)
      .def_property_readonly("upper", &SearchSpace::upper_bounds)
      .def("contains", [](const SearchSpace& s, const std::vector<double>& x) {
        return s.contains(x);
      });

  py::class_<Objective, std::shared_ptr<Objective>>(m, "Objective")
      .def_property_readonly("name", &Objective::name)
      .def_property_readonly("id", &Objective::id)
      .def_property_readonly("dim", &Objective::dim)
      .def_property_readonly("space", &Objective::space)
      .def_property_readonly("floor", &Objective::floor)
      .def_property_readonly("noisy", &Objective::noisy)
      .def("optimum", &Objective::optimum)
      .def(
          "value",
          [](const Objective& o, const std::vector<double>& x, std::uint64_t seed) {
            RngStream rng(seed);
            return o.value(x, rng);
          },
          py::arg("x"), py::arg("noise_seed") = 0,
          "Floored objective value; noise_seed only matters for the noisy row.");

  m.def(
      "benchmark",
      [](int id, int n, std::uint64_t data_seed) {
        return std::const_pointer_cast<Objective>(
            Objective::benchmark(id, n, generate_transform_data(id, n, data_seed)));
      },
      py::arg("id"), py::arg("n"), py::arg("data_seed") = 1,
      "Benchmark row with transform data generated from data_seed.");
  m.def(
      "benchmark_plain",
      [](int id, int n) {
        return std::const_pointer_cast<Objective>(
            Objective::benchmark(id, n, plain_chain(id, n)));
      },
      py::arg("id"), py::arg("n"), "Benchmark row without shift or rotation.");
  m.def(
      "benchmark_from_file",
      [](const std::filesystem::path& path) {
        LoadedTransform t = load_transform_data(path);
        return std::const_pointer_cast<Objective>(
            Objective::benchmark(t.id, t.n, std::move(t.chain)));
      },
      py::arg("path"), "Benchmark row backed by a saved transform-data file.");
  m.def(
      "custom",
      [](std::string name, SearchSpace space,
         std::function<double(std::vector<double>)> fn, double floor) {
        auto wrapped = [fn = std::move(fn)](std::span<const double> x) {
          return fn(std::vector<double>(x.begin(), x.end()));
        };
        return std::const_pointer_cast<Objective>(
            Objective::custom(std::move(name), std::move(space), wrapped, floor));
      },
      py::arg("name"), py::arg("space"), py::arg("fn"),
      py::arg("floor") = kDefaultFloor,
      "Objective from a Python callable taking a list of floats.");

  m.def("parse_function_id", &parse_function_id, py::arg("name"));
  m.def(
      "gen_data",
      [](const std::filesystem::path& path, int id, int n, std::uint64_t seed) {
        save_transform_data(path, id, n, generate_transform_data(id, n, seed));
      },
      py::arg("path"), py::arg("id"), py::arg("n"), py::arg("seed"),
      "Write a transform-data file for the given row.");

  py::class_<TraceSample>(m, "TraceSample")
      .def_readonly("evaluations", &TraceSample::evaluations)
      .def_readonly("best", &TraceSample::best)
      .def("__repr__", [](const TraceSample& t) {
        return "TraceSample(evaluations=" + std::to_string(t.evaluations) +
               ", best=" + std::to_string(t.best) + ")";
      });

  py::class_<RunRecord>(m, "RunRecord")
      .def_readonly("seed", &RunRecord::seed)
      .def_readonly("best_fitness", &RunRecord::best_fitness)
      .def_readonly("best_position", &RunRecord::best_position)
      .def_readonly("evaluations", &RunRecord::evaluations)
      .def_readonly("trace", &RunRecord::trace);

  m.def(
      "run",
      [](std::shared_ptr<Objective> objective, const SsaParams& params,
         std::uint64_t trace_stride) {
        if (objective->is_custom())  // the callable needs the interpreter
          return run(objective, params, trace_stride);
        py::gil_scoped_release release;
        return run(objective, params, trace_stride);
      },
      py::arg("objective"), py::arg("params") = SsaParams{},
      py::arg("trace_stride") = 0,
      "One full optimization run; deterministic in (objective, params).");

  py::class_<Engine>(m, "Engine")
      .def(py::init([](std::shared_ptr<Objective> objective, const SsaParams& params) {
             return std::make_unique<Engine>(std::move(objective), params);
           }),
           py::arg("objective"), py::arg("params"))
      .def("step", &Engine::step)
      .def_property_readonly("iterations", &Engine::iterations)
      .def_property_readonly("evaluations", &Engine::evaluations)
      .def_property_readonly("best_fitness", &Engine::best_fitness)
      .def_property_readonly("best_position", &Engine::best_position)
      .def_property_readonly("sigma_mean", &Engine::sigma_mean)
      .def_property_readonly("positions", [](const Engine& e) {
        std::vector<std::vector<double>> out;
        for (const auto& s : e.population()) out.push_back(s.position);
        return out;
      });

  py::class_<CellSummary>(m, "Summary")
      .def_readonly("count", &CellSummary::count)
      .def_readonly("mean", &CellSummary::mean)
      .def_readonly("stddev", &CellSummary::stddev)
      .def_readonly("min", &CellSummary::min)
      .def_readonly("median", &CellSummary::median)
      .def_readonly("max", &CellSummary::max);

  py::class_<RankSumResult>(m, "RankSumResult")
      .def_readonly("rank_sum", &RankSumResult::rank_sum)
      .def_readonly("z", &RankSumResult::z)
      .def_readonly("p_value", &RankSumResult::p_value)
      .def_property_readonly("verdict", [](const RankSumResult& r) {
        return std::string(1, r.verdict);
      });

  m.def(
      "summarize",
      [](const std::vector<double>& finals) { return summarize(finals); },
      py::arg("finals"));
  m.def(
      "wilcoxon_rank_sum",
      [](const std::vector<double>& a, const std::vector<double>& b, double alpha) {
        return wilcoxon_rank_sum(a, b, alpha);
      },
      py::arg("a"), py::arg("b"), py::arg("alpha") = 0.05);
  m.def(
      "success_ecdf",
      [](const std::vector<double>& finals, const std::vector<double>& thresholds) {
        std::vector<std::pair<double, double>> out;
        for (const auto& pt : success_ecdf(finals, thresholds))
          out.emplace_back(pt.threshold, pt.rate);
        return out;
      },
      py::arg("finals"), py::arg("thresholds"));

  m.def(
      "lower_median",
      [](const std::vector<double>& xs) { return lower_median(xs); }, py::arg("xs"));
  m.def(
      "quadratic_fit",
      [](const std::vector<double>& x, const std::vector<double>& y) {
        return quadratic_fit(x, y);
      },
      py::arg("x"), py::arg("y"));

  m.def("derive_seed", &derive_seed, py::arg("base"), py::arg("cell"), py::arg("run"),
        "Per-run seed hash used by the experiment harness.");
}
