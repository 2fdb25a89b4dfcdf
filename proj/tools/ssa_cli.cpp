// Command-line front end: single runs, experiment batches, parameter sweeps
// and transform-data generation. Every command is deterministic given its
// flags and seeds; all CSVs use '.' decimals and 6-significant-digit
// scientific notation (the summary table adds the 2-digit display column).
//
// Exit codes: 0 success, 1 runtime failure, 2 usage or configuration error.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <algorithm>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ssa/engine.hpp"
#include "ssa/errors.hpp"
#include "ssa/experiment.hpp"
#include "ssa/objective.hpp"
#include "ssa/stats.hpp"
#include "ssa/transform_data.hpp"

namespace fs = std::filesystem;
using namespace ssa;

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.5E", v);
  return buf;
}

// the two-digit mean±std display used by the summary table
std::string mean_std(double mean, double std) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.2E±%.2E", mean, std);
  return buf;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) out.push_back(tok);
  return out;
}

std::vector<int> parse_functions(const std::string& s) {
  std::vector<int> ids;
  for (const auto& tok : split_list(s)) {
    if (tok == "all") {
      for (int id = 1; id <= 25; ++id) ids.push_back(id);
    } else {
      ids.push_back(parse_function_id(tok));
    }
  }
  if (ids.empty()) throw ConfigError("no functions selected");
  return ids;
}

std::vector<int> parse_dims(const std::string& s) {
  std::vector<int> dims;
  for (const auto& tok : split_list(s)) {
    int n = 0;
    try {
      std::size_t used = 0;
      n = std::stoi(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ConfigError("bad dimension '" + tok + "'");
    }
    if (n < 1) throw ConfigError("dimension must be positive, got " + tok);
    dims.push_back(n);
  }
  if (dims.empty()) throw ConfigError("no dimensions selected");
  return dims;
}

std::vector<double> parse_doubles(const std::string& s, const char* what) {
  std::vector<double> out;
  for (const auto& tok : split_list(s)) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ConfigError(std::string("bad ") + what + " '" + tok + "'");
    }
  }
  return out;
}

// --data-path beats SSA_DATA_DIR; empty means in-memory generation only
fs::path resolve_data_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("SSA_DATA_DIR")) return env;
  return {};
}

fs::path data_file(const fs::path& dir, int id, int n) {
  return dir / ("f" + std::to_string(id) + "_" + std::to_string(n) + ".txt");
}

/// Benchmark instance backed by the data directory: an existing
/// f<id>_<n>.txt is loaded, otherwise the chain is generated from data_seed
/// (and saved when a directory is configured, so later runs reuse it).
std::shared_ptr<const Objective> make_benchmark(int id, int n, const fs::path& dir,
                                                std::uint64_t data_seed) {
  if (!dir.empty()) {
    const fs::path file = data_file(dir, id, n);
    if (fs::exists(file)) {
      LoadedTransform loaded = load_transform_data(file);
      if (loaded.id != id || loaded.n != n)
        throw ConfigError(file.string() + ": holds f" + std::to_string(loaded.id) + "/n=" +
                          std::to_string(loaded.n) + ", expected f" + std::to_string(id) +
                          "/n=" + std::to_string(n));
      return Objective::benchmark(id, n, std::move(loaded.chain));
    }
    TransformChain chain = generate_transform_data(id, n, data_seed);
    fs::create_directories(dir);
    save_transform_data(file, id, n, chain);
    return Objective::benchmark(id, n, std::move(chain));
  }
  return Objective::benchmark(id, n, generate_transform_data(id, n, data_seed));
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  return f;
}

// ---------------------------------------------------------------------------

struct CommonFlags {
  std::string functions;
  std::string dims;
  std::uint64_t seed = 0;
  std::uint64_t data_seed = 1;
  std::string data_path;
  std::string out = ".";
  SsaParams base;  // ra/pc/pm defaults live here
  CLI::Option* pop_opt = nullptr;
  CLI::Option* budget_opt = nullptr;
  int pop = 0;
  std::uint64_t budget = 0;
  std::uint64_t trace_stride = 0;
};

void add_param_flags(CLI::App* cmd, CommonFlags& cf) {
  cmd->add_option("--ra", cf.base.ra, "vibration attenuation rate")
      ->capture_default_str();
  cmd->add_option("--pc", cf.base.pc, "mask-keep base probability")
      ->capture_default_str();
  cmd->add_option("--pm", cf.base.pm, "per-bit mask one-probability")
      ->capture_default_str();
  cf.pop_opt = cmd->add_option("--pop", cf.pop, "population size (default: n)");
  cf.budget_opt =
      cmd->add_option("--budget", cf.budget, "function-evaluation budget (default: 10^4 n)");
  cmd->add_option("--seed", cf.seed, "base seed")->capture_default_str();
  cmd->add_option("--trace-stride", cf.trace_stride,
                  "evaluations between trace samples (0: budget/200)");
}

void add_data_flags(CLI::App* cmd, CommonFlags& cf) {
  cmd->add_option("--data-path", cf.data_path,
                  "transform-data directory (default: $SSA_DATA_DIR)");
  cmd->add_option("--data-seed", cf.data_seed,
                  "seed for generating missing transform data")
      ->capture_default_str();
}

void add_config_file(CLI::App* cmd) {
  // registered for --help only; the value is consumed by expand_config_args
  // before CLI11 ever parses, so file keys behave exactly like flags typed
  // right after the subcommand name (explicit flags therefore win)
  std::string dummy;
  cmd->add_option("--config", dummy, "flat key=value file; command-line flags win");
}

/// Reads a flat config file: one `key=value` per line, `#` comments and blank
/// lines ignored. Each key becomes the flag `--key`, so unknown keys fail
/// parsing the same way an unknown flag does.
std::vector<std::string> config_file_flags(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config file " + path);
  std::vector<std::string> flags;
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto strip = [](std::string s) {
      const auto a = s.find_first_not_of(" \t");
      if (a == std::string::npos) return std::string();
      return s.substr(a, s.find_last_not_of(" \t") - a + 1);
    };
    const std::string t = strip(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key=value");
    const std::string key = strip(t.substr(0, eq)), value = strip(t.substr(eq + 1));
    if (key.empty() || key[0] == '-')
      throw ConfigError(path + ":" + std::to_string(lineno) + ": bad key '" + key + "'");
    flags.push_back("--" + key);
    flags.push_back(value);
  }
  return flags;
}

/// Splices every `--config FILE` into the argument list as flags placed right
/// after the subcommand name: file values parse first, explicit command-line
/// flags parse later and take precedence (all options take the last value).
std::vector<std::string> expand_config_args(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::size_t sub_pos = 0;
  while (sub_pos < args.size() && !args[sub_pos].empty() && args[sub_pos][0] == '-')
    ++sub_pos;
  std::vector<std::string> from_files;
  for (std::size_t i = sub_pos + (sub_pos < args.size() ? 1 : 0); i < args.size();) {
    std::string file;
    std::size_t eat = 0;
    if (args[i] == "--config" && i + 1 < args.size()) {
      file = args[i + 1];
      eat = 2;
    } else if (args[i].rfind("--config=", 0) == 0) {
      file = args[i].substr(9);
      eat = 1;
    }
    if (eat == 0) {
      ++i;
      continue;
    }
    const auto flags = config_file_flags(file);
    from_files.insert(from_files.end(), flags.begin(), flags.end());
    args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
               args.begin() + static_cast<std::ptrdiff_t>(i + eat));
  }
  if (!from_files.empty() && sub_pos < args.size())
    args.insert(args.begin() + static_cast<std::ptrdiff_t>(sub_pos) + 1,
                from_files.begin(), from_files.end());
  return args;
}

// ---- run ------------------------------------------------------------------

int cmd_run(const CommonFlags& cf) {
  const auto ids = parse_functions(cf.functions);
  const auto dims = parse_dims(cf.dims);
  if (ids.size() != 1 || dims.size() != 1)
    throw ConfigError("run takes exactly one function and one dimension");
  const int id = ids[0], n = dims[0];

  const auto obj = make_benchmark(id, n, resolve_data_dir(cf.data_path), cf.data_seed);
  SsaParams p = cf.base;
  p.seed = cf.seed;
  p.pop = cf.pop_opt->count() ? cf.pop : n;
  p.budget = cf.budget_opt->count() ? cf.budget : static_cast<std::uint64_t>(n) * 10000;

  const RunRecord rec = run(obj, p, cf.trace_stride);

  fs::create_directories(cf.out);
  std::ostringstream report;
  report << "function " << obj->name() << "\n"
         << "n " << n << "\n"
         << "seed " << p.seed << "\n"
         << "pop " << p.pop << "\n"
         << "budget " << p.budget << "\n"
         << "evaluations " << rec.evaluations << "\n"
         << "best " << sci(rec.best_fitness) << "\n";
  report << "position";
  for (double v : rec.best_position) {
    char buf[32];
    std::snprintf(buf, sizeof buf, " %.17g", v);
    report << buf;
  }
  report << "\n";
  open_out(fs::path(cf.out) / "report.txt") << report.str();
  std::fputs(report.str().c_str(), stdout);

  auto trace = open_out(fs::path(cf.out) / "trace.csv");
  trace << "evaluations,best\n";
  for (const auto& pt : rec.trace)
    trace << pt.evaluations << "," << sci(pt.best) << "\n";
  return 0;
}

// ---- experiment -----------------------------------------------------------

struct BaselineTable {
  // (function name, n) -> final fitness column
  std::map<std::pair<std::string, int>, std::vector<double>> cells;
};

/// Reads an externally produced results CSV. Only the header names matter:
/// `function`, `n` and `final` must exist, extra columns are ignored.
BaselineTable read_baseline_csv(const fs::path& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read baseline CSV " + path.string());
  std::string line;
  if (!std::getline(f, line)) throw ConfigError(path.string() + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_list(line);
  int fn_col = -1, n_col = -1, final_col = -1;
  for (int i = 0; i < static_cast<int>(header.size()); ++i) {
    if (header[static_cast<std::size_t>(i)] == "function") fn_col = i;
    if (header[static_cast<std::size_t>(i)] == "n") n_col = i;
    if (header[static_cast<std::size_t>(i)] == "final") final_col = i;
  }
  if (fn_col < 0 || n_col < 0 || final_col < 0)
    throw ConfigError(path.string() + ": header must name function, n and final columns");

  BaselineTable table;
  int lineno = 1;
  while (std::getline(f, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) fields.push_back(tok);
    const int need = std::max({fn_col, n_col, final_col});
    if (static_cast<int>(fields.size()) <= need)
      throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": too few fields");
    try {
      const std::string fn = fields[static_cast<std::size_t>(fn_col)];
      const int n = std::stoi(fields[static_cast<std::size_t>(n_col)]);
      const double v = std::stod(fields[static_cast<std::size_t>(final_col)]);
      table.cells[{fn, n}].push_back(v);
    } catch (const std::exception&) {
      throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": unparsable row");
    }
  }
  return table;
}

int cmd_experiment(const CommonFlags& cf, int runs, int threads,
                   const std::string& thresholds_str, const std::string& baseline_path) {
  const auto ids = parse_functions(cf.functions);
  const auto dims = parse_dims(cf.dims);
  auto thresholds = parse_doubles(thresholds_str, "threshold");
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());
  if (thresholds.empty()) throw ConfigError("no thresholds given");

  std::optional<BaselineTable> baseline;
  if (!baseline_path.empty()) baseline = read_baseline_csv(baseline_path);

  ExperimentPlan plan;
  const fs::path dir = resolve_data_dir(cf.data_path);
  for (int id : ids)
    for (int n : dims) plan.cells.push_back(make_benchmark(id, n, dir, cf.data_seed));
  plan.runs = runs;
  plan.base = cf.base;
  if (cf.pop_opt->count()) plan.pop = cf.pop;
  if (cf.budget_opt->count()) plan.budget = cf.budget;
  plan.base_seed = cf.seed;
  plan.trace_stride = cf.trace_stride;
  plan.threads = threads;

  const auto results = run_experiment(plan);

  fs::create_directories(cf.out);
  auto summary = open_out(fs::path(cf.out) / "summary.csv");
  auto runs_csv = open_out(fs::path(cf.out) / "runs.csv");
  auto ecdf = open_out(fs::path(cf.out) / "ecdf.csv");
  auto traces = open_out(fs::path(cf.out) / "traces.csv");
  summary << "function,n,mean,std,min,median,max,mean_std\n";
  runs_csv << "function,n,run,seed,final\n";
  ecdf << "function,n,threshold,rate\n";
  traces << "function,n,run,evaluations,best\n";

  int failed = 0;
  std::optional<std::ofstream> verdicts;
  if (baseline) {
    verdicts = open_out(fs::path(cf.out) / "verdicts.csv");
    *verdicts << "function,n,rank_sum,z,p,verdict\n";
  }

  for (const auto& cell : results) {
    const std::string fn = cell.objective->name();
    const int n = cell.objective->dim();
    if (!cell.error.empty()) {
      std::fprintf(stderr, "cell %s n=%d failed: %s\n", fn.c_str(), n, cell.error.c_str());
      ++failed;
      continue;
    }
    const auto finals = final_fitnesses(cell);
    const CellSummary s = summarize(finals);
    summary << fn << "," << n << "," << sci(s.mean) << "," << sci(s.stddev) << ","
            << sci(s.min) << "," << sci(s.median) << "," << sci(s.max) << ","
            << mean_std(s.mean, s.stddev) << "\n";
    for (std::size_t r = 0; r < cell.records.size(); ++r)
      runs_csv << fn << "," << n << "," << r << "," << cell.records[r].seed << ","
               << sci(cell.records[r].best_fitness) << "\n";
    for (const auto& pt : success_ecdf(finals, thresholds))
      ecdf << fn << "," << n << "," << sci(pt.threshold) << "," << sci(pt.rate) << "\n";
    const RunRecord& med = median_convergence_trace(cell.records);
    const std::size_t med_run = lower_median_index(finals);
    for (const auto& pt : med.trace)
      traces << fn << "," << n << "," << med_run << "," << pt.evaluations << ","
             << sci(pt.best) << "\n";
    if (baseline) {
      const auto it = baseline->cells.find({fn, n});
      if (it == baseline->cells.end()) {
        std::fprintf(stderr, "baseline CSV has no rows for %s n=%d, skipping verdict\n",
                     fn.c_str(), n);
      } else {
        const RankSumResult w = wilcoxon_rank_sum(finals, it->second, 0.05);
        *verdicts << fn << "," << n << "," << sci(w.rank_sum) << "," << sci(w.z) << ","
                  << sci(w.p_value) << "," << w.verdict << "\n";
      }
    }
  }
  if (failed) {
    std::fprintf(stderr, "%d of %zu cells failed\n", failed, results.size());
    return 1;
  }
  return 0;
}

// ---- sweep ----------------------------------------------------------------

int cmd_sweep(const CommonFlags& cf, const std::string& param_name,
              const std::string& values_str, int repeats, int threads) {
  SweepParam param;
  std::vector<double> values;
  if (param_name == "ra") {
    param = SweepParam::ra;
    values = {1.0 / 10, 1.0 / 5, 1.0 / 4, 1.0 / 3, 1.0 / 2, 1, 2, 3, 4, 5, 10};
  } else if (param_name == "pc") {
    param = SweepParam::pc;
    values = {0.01, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99};
  } else if (param_name == "pm") {
    param = SweepParam::pm;
    values = {0.01, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99};
  } else {
    throw ConfigError("unknown sweep parameter '" + param_name + "' (ra, pc or pm)");
  }
  if (!values_str.empty()) values = parse_doubles(values_str, "sweep value");

  const auto ids = parse_functions(cf.functions);
  const auto dims = parse_dims(cf.dims);
  if (dims.size() != 1) throw ConfigError("sweep takes a single dimension");

  // the sweep protocol runs the plain (unshifted, unrotated) rows
  std::vector<std::shared_ptr<const Objective>> objectives;
  for (int id : ids)
    objectives.push_back(Objective::benchmark(id, dims[0], plain_chain(id, dims[0])));

  SsaParams fixed = cf.base;
  fixed.pop = cf.pop_opt->count() ? cf.pop : 10;
  fixed.budget = cf.budget_opt->count() ? cf.budget : 100000;

  const auto series =
      parameter_sweep(objectives, param, values, repeats, fixed, cf.seed, threads);

  fs::create_directories(cf.out);
  auto fit = open_out(fs::path(cf.out) / ("sweep_" + param_name + "_fit.csv"));
  fit << "function,c0,c1,c2\n";
  for (const auto& s : series) {
    auto f = open_out(fs::path(cf.out) / ("sweep_" + param_name + "_" + s.function + ".csv"));
    f << "value,mean,fit\n";
    for (std::size_t i = 0; i < s.values.size(); ++i)
      f << sci(s.values[i]) << "," << sci(s.means[i]) << "," << sci(s.fitted[i]) << "\n";
    fit << s.function << "," << sci(s.coeffs[0]) << "," << sci(s.coeffs[1]) << ","
        << sci(s.coeffs[2]) << "\n";
  }
  return 0;
}

// ---- gen-data -------------------------------------------------------------

int cmd_gen_data(const CommonFlags& cf, const std::string& out_file) {
  const auto ids = parse_functions(cf.functions);
  const auto dims = parse_dims(cf.dims);
  if (!out_file.empty()) {
    if (ids.size() != 1 || dims.size() != 1)
      throw ConfigError("--out names a single file; use --data-path for batches");
    const TransformChain chain = generate_transform_data(ids[0], dims[0], cf.seed);
    save_transform_data(out_file, ids[0], dims[0], chain);
    std::printf("%s\n", out_file.c_str());
    return 0;
  }
  fs::path dir = resolve_data_dir(cf.data_path);
  if (dir.empty()) dir = ".";
  fs::create_directories(dir);
  for (int id : ids)
    for (int n : dims) {
      const fs::path file = data_file(dir, id, n);
      save_transform_data(file, id, n, generate_transform_data(id, n, cf.seed));
      std::printf("%s\n", file.string().c_str());
    }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"social spider optimizer: runs, experiments and parameter sweeps"};
  app.require_subcommand(1);

  CommonFlags run_cf, exp_cf, sweep_cf, gen_cf;

  CLI::App* run_cmd = app.add_subcommand("run", "single optimization run");
  run_cmd->add_option("--function", run_cf.functions, "benchmark id, e.g. f6")->required();
  run_cmd->add_option("--dim", run_cf.dims, "problem dimension")->required();
  add_param_flags(run_cmd, run_cf);
  add_data_flags(run_cmd, run_cf);
  run_cmd->add_option("--out", run_cf.out, "output directory")->capture_default_str();
  add_config_file(run_cmd);

  int runs = 51, exp_threads = 0;
  std::string thresholds = "1E-8,1E-6,1E-4,1E-2,1E0,1E2";
  std::string baseline_csv;
  CLI::App* exp_cmd =
      app.add_subcommand("experiment", "multi-run batch over functions x dimensions");
  exp_cmd->add_option("--function", exp_cf.functions, "comma list of ids, or 'all'")
      ->required();
  exp_cmd->add_option("--dim", exp_cf.dims, "comma list of dimensions")->required();
  exp_cmd->add_option("--runs", runs, "independent runs per cell")->capture_default_str();
  exp_cmd->add_option("--threads", exp_threads, "worker threads (0: hardware)");
  exp_cmd->add_option("--thresholds", thresholds, "success-rate thresholds")
      ->capture_default_str();
  exp_cmd->add_option("--baseline-csv", baseline_csv,
                      "external finals (columns function,n,final) for rank-sum verdicts");
  add_param_flags(exp_cmd, exp_cf);
  add_data_flags(exp_cmd, exp_cf);
  exp_cmd->add_option("--out", exp_cf.out, "output directory")->capture_default_str();
  add_config_file(exp_cmd);

  std::string sweep_param, sweep_values;
  int repeats = 20, sweep_threads = 0;
  sweep_cf.functions = "f1,f2,f6,f7,f8";
  sweep_cf.dims = "10";
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "one-parameter sensitivity study");
  sweep_cmd->add_option("--param", sweep_param, "which parameter: ra, pc or pm")
      ->required();
  sweep_cmd->add_option("--values", sweep_values, "comma list (default: built-in grid)");
  sweep_cmd->add_option("--repeats", repeats, "runs per (function,value) cell")
      ->capture_default_str();
  sweep_cmd->add_option("--threads", sweep_threads, "worker threads (0: hardware)");
  sweep_cmd->add_option("--function", sweep_cf.functions, "functions to sweep")
      ->capture_default_str();
  sweep_cmd->add_option("--dim", sweep_cf.dims, "problem dimension")->capture_default_str();
  add_param_flags(sweep_cmd, sweep_cf);
  sweep_cmd->add_option("--out", sweep_cf.out, "output directory")->capture_default_str();
  add_config_file(sweep_cmd);

  std::string gen_out;
  gen_cf.seed = 1;
  CLI::App* gen_cmd = app.add_subcommand("gen-data", "write transform-data files");
  gen_cmd->add_option("--function", gen_cf.functions, "comma list of ids, or 'all'")
      ->required();
  gen_cmd->add_option("--dim", gen_cf.dims, "comma list of dimensions")->required();
  gen_cmd->add_option("--seed", gen_cf.seed, "generation seed")->capture_default_str();
  gen_cmd->add_option("--data-path", gen_cf.data_path,
                      "target directory (default: $SSA_DATA_DIR, else '.')");
  gen_cmd->add_option("--out", gen_out, "write one file to this exact path");
  add_config_file(gen_cmd);

  for (CLI::App* sub : {run_cmd, exp_cmd, sweep_cmd, gen_cmd})
    for (CLI::Option* opt : sub->get_options())
      if (opt->get_expected_min() >= 1)
        opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  try {
    std::vector<std::string> args = expand_config_args(argc, argv);
    std::reverse(args.begin(), args.end());  // CLI11's vector overload wants them reversed
    app.parse(args);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (run_cmd->parsed()) return cmd_run(run_cf);
    if (exp_cmd->parsed())
      return cmd_experiment(exp_cf, runs, exp_threads, thresholds, baseline_csv);
    if (sweep_cmd->parsed())
      return cmd_sweep(sweep_cf, sweep_param, sweep_values, repeats, sweep_threads);
    if (gen_cmd->parsed()) return cmd_gen_data(gen_cf, gen_out);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
