#include "ssa/objective.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "ssa/errors.hpp"

namespace ssa {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSchwefelOffset = 418.9828872724338;

double f_sphere(std::span<const double> z) {
  double s = 0.0;
  for (double v : z) s += v * v;
  return s;
}

double f_schwefel222(std::span<const double> z) {
  double sum = 0.0, prod = 1.0;
  for (double v : z) {
    sum += std::abs(v);
    prod *= std::abs(v);
  }
  return z.empty() ? 0.0 : sum + prod;
}

double f_cigar(std::span<const double> z) {
  if (z.empty()) return 0.0;
  double tail = 0.0;
  for (std::size_t i = 1; i < z.size(); ++i) tail += z[i] * z[i];
  return z[0] * z[0] + 1e6 * tail;
}

double f_discus(std::span<const double> z) {
  if (z.empty()) return 0.0;
  double tail = 0.0;
  for (std::size_t i = 1; i < z.size(); ++i) tail += z[i] * z[i];
  return 1e6 * z[0] * z[0] + tail;
}

// deterministic part of the noisy quartic; the uniform noise is added by the caller
double f_quartic(std::span<const double> z) {
  double s = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double sq = z[i] * z[i];
    s += static_cast<double>(i + 1) * sq * sq;
  }
  return s;
}

double f_rastrigin(std::span<const double> z) {
  double s = 0.0;
  for (double v : z) s += v * v - 10.0 * std::cos(2.0 * kPi * v) + 10.0;
  return s;
}

double f_ackley(std::span<const double> z) {
  if (z.empty()) return 0.0;
  const double n = static_cast<double>(z.size());
  double sq = 0.0, cs = 0.0;
  for (double v : z) {
    sq += v * v;
    cs += std::cos(2.0 * kPi * v);
  }
  return -20.0 * std::exp(-0.2 * std::sqrt(sq / n)) - std::exp(cs / n) + 20.0 +
         std::numbers::e;
}

double f_griewank(std::span<const double> z) {
  double sum = 0.0, prod = 1.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    sum += z[i] * z[i] / 4000.0;
    prod *= std::cos(z[i] / std::sqrt(static_cast<double>(i + 1)));
  }
  return z.empty() ? 0.0 : sum - prod + 1.0;
}

double f_rosenbrock(std::span<const double> z) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < z.size(); ++i) {
    const double a = z[i + 1] - z[i] * z[i];
    const double b = z[i] - 1.0;
    s += 100.0 * a * a + b * b;
  }
  return s;
}

// the y-substituted Levy variant as printed: the middle sine has no pi factor
double f_levy(std::span<const double> z) {
  if (z.empty()) return 0.0;
  const std::size_t n = z.size();
  auto y = [&](std::size_t i) { return 1.0 + (z[i] + 1.0) / 4.0; };
  const double s0 = std::sin(kPi * y(0));
  double t = s0 * s0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double yi = y(i), yn = y(i + 1);
    const double sn = std::sin(yn);
    t += (yi - 1.0) * (yi - 1.0) * (1.0 + 10.0 * sn * sn);
  }
  const double yl = y(n - 1);
  const double sl = std::sin(2.0 * kPi * yl);
  t += (yl - 1.0) * (yl - 1.0) * (1.0 + sl * sl);
  return t;
}

double u_penalty(double v, double a, double k, double m) {
  if (v > a) return k * std::pow(v - a, m);
  if (v < -a) return k * std::pow(-v - a, m);
  return 0.0;
}

double f_penalized(std::span<const double> z) {
  if (z.empty()) return 0.0;
  const std::size_t n = z.size();
  const double s0 = std::sin(3.0 * kPi * z[0]);
  double t = s0 * s0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double sn = std::sin(3.0 * kPi * z[i + 1]);
    t += (z[i] - 1.0) * (z[i] - 1.0) * (1.0 + sn * sn);
  }
  const double sl = std::sin(2.0 * kPi * z[n - 1]);
  t += (z[n - 1] - 1.0) * (z[n - 1] - 1.0) * (1.0 + sl * sl);
  t /= 10.0;
  for (double v : z) t += u_penalty(v, 5.0, 100.0, 4.0);
  return t;
}

double schaffer_g(double x, double y) {
  const double q = x * x + y * y;
  const double s = std::sin(std::sqrt(q));
  const double d = 1.0 + 0.001 * q;
  return 0.5 + (s * s - 0.5) / (d * d);
}

// ring structure including the wrap-around pair (z_n, z_1)
double f_schaffer6(std::span<const double> z) {
  const std::size_t n = z.size();
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += schaffer_g(z[i], z[(i + 1) % n]);
  return s;
}

double f_schwefel226(std::span<const double> z) {
  double s = 0.0;
  for (double v : z) s += v * std::sin(std::sqrt(std::abs(v)));
  return kSchwefelOffset * static_cast<double>(z.size()) - s;
}

double f_schafferf7(std::span<const double> z) {
  if (z.size() < 2) return 0.0;
  const std::size_t n = z.size();
  double t = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double y = std::sqrt(z[i] * z[i] + z[i + 1] * z[i + 1]);
    t += std::sqrt(y) + std::sin(50.0 * std::pow(y, 0.2)) * std::sqrt(y);
  }
  t /= static_cast<double>(n - 1);
  return t * t;
}

constexpr double kLunacekMu1 = 2.5;
constexpr double kLunacekD = 1.0;

double lunacek_s(int n) { return 1.0 - 1.0 / (2.0 * std::sqrt(static_cast<double>(n)) - 8.2); }

bool lunacek_defined(int n) {
  const double s = lunacek_s(n);
  return std::isfinite(s) && s > 0.0;
}

double f_lunacek(std::span<const double> z) {
  if (z.empty()) return 0.0;
  const int n = static_cast<int>(z.size());
  const double s = lunacek_s(n);
  const double mu2 = -std::sqrt((kLunacekMu1 * kLunacekMu1 - kLunacekD) / s);
  double a = 0.0, b = 0.0, c = 0.0;
  for (double v : z) {
    a += (v - kLunacekMu1) * (v - kLunacekMu1);
    b += (v - mu2) * (v - mu2);
    c += 1.0 - std::cos(2.0 * kPi * (v - kLunacekMu1));
  }
  return std::min(a, kLunacekD * n + s * b) + 10.0 * c;
}

double base_eval(int id, std::span<const double> z) {
  switch (id) {
    case 1: return f_sphere(z);
    case 2: return f_schwefel222(z);
    case 3: return f_cigar(z);
    case 4: return f_discus(z);
    case 5: return f_quartic(z);
    case 6: return f_rastrigin(z);
    case 7: return f_ackley(z);
    case 8: return f_griewank(z);
    case 9: return f_rosenbrock(z);
    case 10: return f_levy(z);
    case 11: return f_penalized(z);
    case 12: return f_schaffer6(z);
    case 13: return f_schwefel226(z);
    case 14: return f_schafferf7(z);
    case 15: return f_lunacek(z);
    default: throw ConfigError("base function id out of range: " + std::to_string(id));
  }
}

int base_id(int id) {
  switch (id) {
    case 16: return 8;
    case 17: return 9;
    case 18: return 11;
    case 19: return 12;
    case 20: return 15;
    default: return id;
  }
}

// z* per base row: the coordinate value of the analytic minimizer in z-space
double base_optimum_coord(int id) {
  switch (id) {
    case 9: return 1.0;
    case 10: return -1.0;
    case 11: return 1.0;
    case 13: return 420.9687462275036;
    case 15: return kLunacekMu1;
    default: return 0.0;
  }
}

const std::vector<int>& hybrid_parts(int id) {
  static const std::vector<int> h21{1, 6, 13};
  static const std::vector<int> h22{6, 8, 9};
  static const std::vector<int> h23{3, 7, 9, 11};
  static const std::vector<int> h24{6, 7, 8, 9, 13};
  static const std::vector<int> h25{1, 7, 10, 13, 15};
  switch (id) {
    case 21: return h21;
    case 22: return h22;
    case 23: return h23;
    case 24: return h24;
    case 25: return h25;
    default: throw ConfigError("not a hybrid id: " + std::to_string(id));
  }
}

void check_id_dim(int id, int n) {
  if (id < 1 || id > 25)
    throw ConfigError("benchmark id must lie in 1..25, got " + std::to_string(id));
  if (n < 1) throw ConfigError("benchmark dimension must be >= 1");
  if (id == 14 && n < 2) throw ConfigError("f14 needs dimension >= 2");
  if ((id == 15 || id == 20) && !lunacek_defined(n))
    throw ConfigError("f" + std::to_string(id) +
                      ": the Lunacek scale factor is undefined at dimension " +
                      std::to_string(n));
  if (is_hybrid(id))
    for (auto [sub, d] : hybrid_split(id, n))
      if (sub == 15 && d > 0 && !lunacek_defined(d))
        throw ConfigError("f" + std::to_string(id) +
                          ": Lunacek block of undefined dimension " + std::to_string(d));
}

void matvec(const Matrix& m, std::span<const double> z, std::vector<double>& out) {
  out.resize(z.size());
  for (int i = 0; i < m.n; ++i) {
    double s = 0.0;
    for (int j = 0; j < m.n; ++j) s += m.at(i, j) * z[static_cast<std::size_t>(j)];
    out[static_cast<std::size_t>(i)] = s;
  }
}

void check_orthogonal(const Matrix& m) {
  const int n = m.n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += m.at(k, i) * m.at(k, j);
      const double expect = i == j ? 1.0 : 0.0;
      if (std::abs(s - expect) > 1e-10)
        throw ConfigError("rotation matrix is not orthogonal within 1e-10");
    }
}

}  // namespace

int parse_function_id(std::string_view name) {
  if (name.size() < 2 || name[0] != 'f') return 0;
  int v = 0;
  for (std::size_t i = 1; i < name.size(); ++i) {
    if (name[i] < '0' || name[i] > '9') return 0;
    v = v * 10 + (name[i] - '0');
    if (v > 25) return 0;
  }
  return v >= 1 ? v : 0;
}

double row_scale(int id) {
  switch (id) {
    case 2: return 10.0 / 100.0;
    case 5: return 1.28 / 100.0;
    case 6: return 5.12 / 100.0;
    case 7: return 32.0 / 100.0;
    case 8: return 600.0 / 100.0;
    case 9: return 30.0 / 100.0;
    case 10: return 50.0 / 100.0;
    case 11: return 50.0 / 100.0;
    case 13: return 500.0 / 100.0;
    case 15: return 10.0 / 100.0;
    case 16: return 600.0 / 100.0;
    case 17: return 30.0 / 100.0;
    case 18: return 50.0 / 100.0;
    case 20: return 10.0 / 100.0;
    default: return 1.0;  // f1, f3, f4, f12, f14, f19 and the hybrid rows
  }
}

bool is_rotated(int id) { return id >= 16 && id <= 20; }
bool is_hybrid(int id) { return id >= 21 && id <= 25; }
bool is_unshifted(int id) { return id == 13; }

std::vector<std::pair<int, int>> hybrid_split(int id, int n) {
  const auto& parts = hybrid_parts(id);
  const int k = static_cast<int>(parts.size());
  const int base = n / k;
  const int extra = n % k;
  std::vector<std::pair<int, int>> split;
  split.reserve(parts.size());
  for (int i = 0; i < k; ++i) split.emplace_back(parts[static_cast<std::size_t>(i)],
                                                 base + (i < extra ? 1 : 0));
  return split;
}

TransformChain generate_transform_data(int id, int n, std::uint64_t seed) {
  check_id_dim(id, n);
  RngStream rng(seed);
  TransformChain chain;
  chain.scale = is_hybrid(id) ? 1.0 : row_scale(id);
  if (is_hybrid(id)) chain.split = hybrid_split(id, n);
  if (!is_unshifted(id)) {
    std::vector<double> o(static_cast<std::size_t>(n));
    for (auto& v : o) v = -80.0 + 160.0 * rng.next_double();
    chain.shift = std::move(o);
  }
  if (is_rotated(id)) {
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = rng.next_normal();
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
    Eigen::MatrixXd q = qr.householderQ();
    const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j)
      if (r(j, j) < 0.0) q.col(j) *= -1.0;
    Matrix m(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m.at(i, j) = q(i, j);
    chain.rotation = std::move(m);
  }
  return chain;
}

TransformChain plain_chain(int id, int n) {
  check_id_dim(id, n);
  TransformChain chain;
  chain.scale = is_hybrid(id) ? 1.0 : row_scale(id);
  if (is_hybrid(id)) chain.split = hybrid_split(id, n);
  if (is_rotated(id)) {
    Matrix m(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    chain.rotation = std::move(m);
  }
  return chain;
}

Objective::Objective(int id, int n, TransformChain chain, double floor, bool noisy)
    : name_("f" + std::to_string(id)),
      id_(id),
      space_(SearchSpace::symmetric(n, 100.0)),
      chain_(std::move(chain)),
      floor_(floor),
      noisy_(noisy) {
  // scale and split are functions of (id, n); keep them canonical
  chain_.scale = is_hybrid(id) ? 1.0 : row_scale(id);
  chain_.split = is_hybrid(id) ? hybrid_split(id, n) : std::vector<std::pair<int, int>>{};
  if (chain_.shift) {
    if (is_unshifted(id))
      throw ConfigError(name_ + " is never shifted, but a shift vector was supplied");
    if (static_cast<int>(chain_.shift->size()) != n)
      throw ConfigError(name_ + ": shift vector length " +
                        std::to_string(chain_.shift->size()) + " does not match dimension " +
                        std::to_string(n));
  }
  if (is_rotated(id)) {
    if (!chain_.rotation)
      throw ConfigError(name_ + " is a rotated row and needs a rotation matrix");
    if (chain_.rotation->n != n)
      throw ConfigError(name_ + ": rotation size does not match dimension");
    check_orthogonal(*chain_.rotation);
  } else if (chain_.rotation) {
    throw ConfigError(name_ + " is not a rotated row, but a rotation matrix was supplied");
  }
}

Objective::Objective(std::string name, SearchSpace space, CustomFn fn, double floor)
    : name_(std::move(name)), id_(0), space_(std::move(space)), floor_(floor),
      custom_(std::move(fn)) {
  if (!custom_) throw ConfigError("custom objective '" + name_ + "' has no function");
}

std::shared_ptr<const Objective> Objective::benchmark(int id, int n, TransformChain chain,
                                                      double floor,
                                                      std::optional<bool> noisy_override) {
  check_id_dim(id, n);
  const bool noisy = noisy_override.value_or(id == 5);
  return std::shared_ptr<const Objective>(
      new Objective(id, n, std::move(chain), floor, noisy));
}

std::shared_ptr<const Objective> Objective::custom(std::string name, SearchSpace space,
                                                   CustomFn fn, double floor) {
  return std::shared_ptr<const Objective>(
      new Objective(std::move(name), std::move(space), std::move(fn), floor));
}

double Objective::raw(std::span<const double> x, RngStream& rng) const {
  if (custom_) return custom_(x);
  if (static_cast<int>(x.size()) != dim())
    throw ConfigError(name_ + ": position dimension " + std::to_string(x.size()) +
                      " does not match objective dimension " + std::to_string(dim()));
  thread_local std::vector<double> z, w;
  const double* shift = chain_.shift ? chain_.shift->data() : nullptr;

  if (!chain_.split.empty()) {
    double total = 0.0;
    std::size_t off = 0;
    for (auto [sub, d] : chain_.split) {
      if (d > 0) {
        z.resize(static_cast<std::size_t>(d));
        const double sc = row_scale(sub);
        for (int j = 0; j < d; ++j) {
          const std::size_t k = off + static_cast<std::size_t>(j);
          z[static_cast<std::size_t>(j)] =
              sub == 13 ? x[k] * sc : (x[k] - (shift ? shift[k] : 0.0)) * sc;
        }
        total += base_eval(sub, std::span<const double>(z.data(), static_cast<std::size_t>(d)));
      }
      off += static_cast<std::size_t>(d);
    }
    return total;
  }

  const std::size_t n = x.size();
  z.resize(n);
  for (std::size_t j = 0; j < n; ++j)
    z[j] = id_ == 13 ? x[j] * chain_.scale
                     : (x[j] - (shift ? shift[j] : 0.0)) * chain_.scale;
  std::span<const double> zz(z.data(), n);
  if (chain_.rotation) {
    matvec(*chain_.rotation, zz, w);
    zz = std::span<const double>(w.data(), n);
  }
  double val = base_eval(base_id(id_), zz);
  if (noisy_) val += rng.next_double();
  return val;
}

double Objective::value(std::span<const double> x, RngStream& rng) const {
  return std::max(raw(x, rng), floor_);
}

std::vector<double> Objective::optimum() const {
  if (is_custom()) throw ConfigError("custom objective has no known analytic optimum");
  const int n = dim();
  std::vector<double> x(static_cast<std::size_t>(n), 0.0);

  if (!chain_.split.empty()) {
    std::size_t off = 0;
    for (auto [sub, d] : chain_.split) {
      const double zstar = base_optimum_coord(sub);
      const double sc = row_scale(sub);
      for (int j = 0; j < d; ++j) {
        const std::size_t k = off + static_cast<std::size_t>(j);
        const double o = (sub != 13 && chain_.shift) ? (*chain_.shift)[k] : 0.0;
        x[k] = o + zstar / sc;
      }
      off += static_cast<std::size_t>(d);
    }
    return x;
  }

  // z with base(Mz) minimal satisfies Mz = z*, i.e. z = M^T z*
  std::vector<double> zstar(static_cast<std::size_t>(n), base_optimum_coord(base_id(id_)));
  if (chain_.rotation) {
    std::vector<double> rotated(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int j = 0; j < n; ++j)
        s += chain_.rotation->at(j, i) * zstar[static_cast<std::size_t>(j)];
      rotated[static_cast<std::size_t>(i)] = s;
    }
    zstar = std::move(rotated);
  }
  for (int j = 0; j < n; ++j) {
    const std::size_t k = static_cast<std::size_t>(j);
    const double o = (id_ != 13 && chain_.shift) ? (*chain_.shift)[k] : 0.0;
    x[k] = o + zstar[k] / chain_.scale;
  }
  return x;
}

ObjectiveRegistry& ObjectiveRegistry::instance() {
  static ObjectiveRegistry reg;
  return reg;
}

void ObjectiveRegistry::add(std::string name, Factory factory) {
  std::lock_guard lock(mu_);
  if (!factory) throw ConfigError("registry: null factory for '" + name + "'");
  if (parse_function_id(name) != 0)
    throw ConfigError("registry: '" + name + "' collides with a benchmark id");
  if (!factories_.emplace(std::move(name), std::move(factory)).second)
    throw ConfigError("registry: duplicate objective name");
}

bool ObjectiveRegistry::contains(const std::string& name) const {
  std::lock_guard lock(mu_);
  return factories_.count(name) > 0;
}

std::shared_ptr<const Objective> ObjectiveRegistry::make(const std::string& name,
                                                         int n) const {
  Factory factory;
  {
    std::lock_guard lock(mu_);
    const auto it = factories_.find(name);
    if (it == factories_.end())
      throw ConfigError("unknown objective '" + name + "'");
    factory = it->second;
  }
  auto obj = factory(n);
  if (!obj) throw ConfigError("registry factory for '" + name + "' returned null");
  return obj;
}

}  // namespace ssa
