#include "ssa/transform_data.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "ssa/errors.hpp"

namespace ssa {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

[[noreturn]] void fail(const std::filesystem::path& path, int line, const std::string& what) {
  throw ConfigError(path.string() + ":" + std::to_string(line) + ": " + what);
}

std::vector<double> parse_row(const std::filesystem::path& path, int line,
                              const std::string& text, int expect) {
  std::istringstream in(text);
  std::vector<double> row;
  double v = 0.0;
  while (in >> v) row.push_back(v);
  if (!in.eof()) fail(path, line, "malformed number in '" + text + "'");
  if (static_cast<int>(row.size()) != expect)
    fail(path, line, "expected " + std::to_string(expect) + " values, got " +
                         std::to_string(row.size()));
  return row;
}

}  // namespace

void save_transform_data(const std::filesystem::path& path, int id, int n,
                         const TransformChain& chain) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open '" + path.string() + "' for writing");
  out << "ssa-transform v1 " << id << ' ' << n << '\n';
  if (chain.shift) {
    if (static_cast<int>(chain.shift->size()) != n)
      throw ConfigError("shift length does not match n while writing '" + path.string() + "'");
    for (int j = 0; j < n; ++j) out << (j ? " " : "") << fmt17((*chain.shift)[static_cast<std::size_t>(j)]);
    out << '\n';
  } else {
    out << "none\n";
  }
  if (chain.rotation) {
    const Matrix& m = *chain.rotation;
    if (m.n != n)
      throw ConfigError("rotation size does not match n while writing '" + path.string() + "'");
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) out << (j ? " " : "") << fmt17(m.at(i, j));
      out << '\n';
    }
  } else {
    out << "none\n";
  }
  out.flush();
  if (!out) throw ConfigError("write to '" + path.string() + "' failed");
}

LoadedTransform load_transform_data(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open transform data file '" + path.string() + "'");

  std::string line;
  if (!std::getline(in, line)) fail(path, 1, "empty file");
  std::istringstream header(line);
  std::string magic, version;
  int id = 0, n = 0;
  if (!(header >> magic >> version >> id >> n) || magic != "ssa-transform")
    fail(path, 1, "bad header, expected 'ssa-transform v1 <id> <n>'");
  if (version != "v1") fail(path, 1, "unsupported version '" + version + "'");
  if (id < 1 || id > 25) fail(path, 1, "function id out of range: " + std::to_string(id));
  if (n < 1) fail(path, 1, "dimension must be positive, got " + std::to_string(n));

  LoadedTransform result;
  result.id = id;
  result.n = n;
  result.chain.scale = is_hybrid(id) ? 1.0 : row_scale(id);
  if (is_hybrid(id)) result.chain.split = hybrid_split(id, n);

  if (!std::getline(in, line)) fail(path, 2, "missing shift line");
  if (line == "none") {
    if (!is_unshifted(id))
      fail(path, 2, "f" + std::to_string(id) + " requires a shift vector");
  } else {
    if (is_unshifted(id))
      fail(path, 2, "f" + std::to_string(id) + " takes no shift; expected 'none'");
    result.chain.shift = parse_row(path, 2, line, n);
  }

  int lineno = 3;
  if (!std::getline(in, line)) fail(path, lineno, "missing rotation section");
  if (line == "none") {
    if (is_rotated(id))
      fail(path, lineno, "f" + std::to_string(id) + " requires a rotation matrix");
  } else {
    if (!is_rotated(id))
      fail(path, lineno, "f" + std::to_string(id) + " takes no rotation; expected 'none'");
    Matrix m(n);
    for (int i = 0; i < n; ++i) {
      if (i > 0) {
        ++lineno;
        if (!std::getline(in, line)) fail(path, lineno, "missing rotation row");
      }
      const auto row = parse_row(path, lineno, line, n);
      for (int j = 0; j < n; ++j) m.at(i, j) = row[static_cast<std::size_t>(j)];
    }
    result.chain.rotation = std::move(m);
  }

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty()) fail(path, lineno, "unexpected trailing content: '" + line + "'");
  }

  return result;
}

}  // namespace ssa
