#pragma once

#include <stdexcept>
#include <string>

namespace qlm {

// Simulation budget exceeded (register too large, subspace too large, ...).
struct BudgetError : std::runtime_error {
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

// Invalid run configuration (schema violation, unknown key, bad value).
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Every trajectory of a noisy run hit the norm guard.
struct AllTrajectoriesDiscarded : std::runtime_error {
  explicit AllTrajectoriesDiscarded(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace qlm
