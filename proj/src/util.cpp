#include "jumpdg/util.hpp"

#include <algorithm>

namespace jumpdg {

int thread_count() {
  if (const char* s = std::getenv("JUMPDG_THREADS")) {
    int n = std::atoi(s);
    if (n >= 1) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

void parallel_for(int n, const std::function<void(int, int)>& body) {
  int nt = std::min(thread_count(), n);
  if (nt <= 1) {
    body(0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nt);
  int chunk = (n + nt - 1) / nt;
  std::vector<std::exception_ptr> errors(static_cast<size_t>(nt));
  for (int t = 0; t < nt; ++t) {
    int b = t * chunk, e = std::min(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back([&body, &errors, t, b, e] {
      try {
        body(b, e);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  // Rethrow the lowest-chunk failure so the reported cell never depends on
  // thread scheduling.
  for (auto& err : errors)
    if (err) std::rethrow_exception(err);
}

std::string env_or(const char* name, const std::string& fallback) {
  const char* s = std::getenv(name);
  return s ? std::string(s) : fallback;
}

}  // namespace jumpdg
