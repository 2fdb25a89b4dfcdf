#pragma once

#include <stdexcept>
#include <string>

namespace ssa {

/// Invalid parameter, objective, or experiment configuration.
/// The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// A fitness value at or below the intensity baseline constant was observed.
/// The baseline must sit strictly below every fitness the objective can
/// return; hitting this means it was mis-chosen. The CLI maps this to exit 1.
class BaselineError : public std::runtime_error {
public:
  explicit BaselineError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ssa
