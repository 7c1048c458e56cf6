#pragma once

#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace jumpdg {

/// Raised when a state with non-positive density or pressure is met where an
/// admissible state is required (flux evaluation, limiter input, ...).
struct AdmissibilityError : std::runtime_error {
  int cell = -1;
  AdmissibilityError(const std::string& what, int cell_id)
      : std::runtime_error(what), cell(cell_id) {}
};

/// Raised for malformed run configurations, unknown registry ids, bad meshes.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Thread count used by parallel_for: JUMPDG_THREADS if set, else hardware.
int thread_count();

/// Splits [0, n) into contiguous chunks and runs body(begin, end) on each.
/// Falls back to a plain call when one thread is in use, so sequential runs
/// stay bit-reproducible and free of scheduling overhead. If chunks throw,
/// the lowest chunk's exception is rethrown after all threads join, keeping
/// error reports independent of scheduling.
void parallel_for(int n, const std::function<void(int, int)>& body);

/// Environment lookup with default.
std::string env_or(const char* name, const std::string& fallback);

}  // namespace jumpdg
