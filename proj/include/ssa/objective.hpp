#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ssa/rng.hpp"
#include "ssa/search_space.hpp"

namespace ssa {

inline constexpr double kDefaultFloor = 1e-8;

/// Dense row-major square matrix, just big enough for the rotation chains.
struct Matrix {
  int n = 0;
  std::vector<double> v;

  Matrix() = default;
  explicit Matrix(int size) : n(size), v(static_cast<std::size_t>(size) * size, 0.0) {}

  double& at(int i, int j) { return v[static_cast<std::size_t>(i) * n + j]; }
  double at(int i, int j) const { return v[static_cast<std::size_t>(i) * n + j]; }
};

/// How raw coordinates x become the evaluated variable z.
/// For single-block rows: z = (x - shift) * scale, then optionally w = rotation * z.
/// For hybrid rows `split` lists (base id, block dims) pairs evaluated on
/// contiguous coordinate blocks with the base row's own scale; shift entries
/// under a Schwefel 2.26 block are ignored (that row is never shifted).
struct TransformChain {
  std::optional<std::vector<double>> shift;
  double scale = 1.0;
  std::optional<Matrix> rotation;
  std::vector<std::pair<int, int>> split;
};

/// f1..f25 name to id. Returns 0 if the name is not of that form.
int parse_function_id(std::string_view name);

/// The exact z-scale of a benchmark row (e.g. 5.12/100 for f6).
double row_scale(int id);

bool is_rotated(int id);    // f16..f20
bool is_hybrid(int id);     // f21..f25
bool is_unshifted(int id);  // f13 only

/// Contiguous block layout of a hybrid row: equal blocks in listed
/// subcomponent order, with the first n % k blocks taking one extra dimension
/// (f21 at n = 10 gives (4,3,3)). Blocks may be empty when n < k; empty
/// blocks contribute 0.
std::vector<std::pair<int, int>> hybrid_split(int id, int n);

/// Deterministic transform data: shift drawn uniformly in [-80, 80]^n (none
/// for f13), rotation for f16..f20 as the orthogonal factor of a QR
/// decomposition of a seeded standard-normal matrix, sign-normalized so the
/// triangular factor has a positive diagonal (making it unique).
TransformChain generate_transform_data(int id, int n, std::uint64_t seed);

/// Chain with no shift and no rotation (the parameter-sweep protocol runs the
/// benchmarks unshifted); scale and hybrid split still apply.
TransformChain plain_chain(int id, int n);

/// An immutable objective: box bounds, a floored evaluator, and (for the
/// benchmark rows) the transform chain. Thread-safe after construction; the
/// only randomness is the additive noise of f5, drawn from the caller's
/// stream.
class Objective {
public:
  using CustomFn = std::function<double(std::span<const double>)>;

  /// Benchmark row f<id> on [-100,100]^n. Validates the chain (shift length,
  /// rotation orthogonality within 1e-10, split totals). `noisy_override`
  /// exists so tests can evaluate f5 without noise.
  static std::shared_ptr<const Objective> benchmark(
      int id, int n, TransformChain chain, double floor = kDefaultFloor,
      std::optional<bool> noisy_override = {});

  /// User-defined objective.
  static std::shared_ptr<const Objective> custom(std::string name, SearchSpace space,
                                                 CustomFn fn, double floor = kDefaultFloor);

  const std::string& name() const { return name_; }
  int id() const { return id_; }  ///< 1..25, or 0 for custom objectives
  int dim() const { return space_.dim(); }
  const SearchSpace& space() const { return space_; }
  double floor() const { return floor_; }
  bool noisy() const { return noisy_; }
  bool is_custom() const { return id_ == 0; }
  const TransformChain& chain() const { return chain_; }

  /// Un-floored value. `rng` is consumed only by the f5 noise term.
  double raw(std::span<const double> x, RngStream& rng) const;

  /// max(raw, floor) — the value the engine sees.
  double value(std::span<const double> x, RngStream& rng) const;

  /// The analytic minimizer in x-coordinates (benchmark rows only; for f5 the
  /// minimizer of the deterministic part). Throws ConfigError for custom
  /// objectives.
  std::vector<double> optimum() const;

private:
  Objective(int id, int n, TransformChain chain, double floor, bool noisy);
  Objective(std::string name, SearchSpace space, CustomFn fn, double floor);

  std::string name_;
  int id_ = 0;
  SearchSpace space_;
  TransformChain chain_;
  double floor_ = kDefaultFloor;
  bool noisy_ = false;
  CustomFn custom_;
};

/// Name -> factory table for user-defined objectives, so external functions
/// can be addressed through the same id strings the CLI accepts.
class ObjectiveRegistry {
public:
  using Factory = std::function<std::shared_ptr<const Objective>(int n)>;

  static ObjectiveRegistry& instance();

  void add(std::string name, Factory factory);  ///< throws ConfigError on duplicates
  bool contains(const std::string& name) const;
  std::shared_ptr<const Objective> make(const std::string& name, int n) const;

private:
  mutable std::mutex mu_;
  std::map<std::string, Factory> factories_;
};

}  // namespace ssa
