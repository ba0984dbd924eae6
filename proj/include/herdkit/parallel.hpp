#pragma once

#include <cstddef>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

#include "report.hpp"

namespace herdkit {

// Worker count for the exhaustive basis scans. HERDKIT_THREADS caps it;
// unset or unparsable means hardware concurrency.
inline std::size_t thread_budget() {
  std::size_t hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* s = std::getenv("HERDKIT_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    if (end != s && v >= 1 && static_cast<std::size_t>(v) < hw)
      hw = static_cast<std::size_t>(v);
  }
  return hw;
}

// Splits [0, n) into contiguous blocks, one worker per block. Each worker
// runs fn(begin, end) on its own block; fn must not touch shared state.
template <class Fn>
void parallel_blocks(std::size_t n, Fn&& fn) {
  const std::size_t workers = std::min(thread_budget(), n == 0 ? std::size_t{1} : n);
  if (workers <= 1) {
    fn(std::size_t{0}, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t b = w * chunk;
    const std::size_t e = std::min(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back([&fn, b, e] { fn(b, e); });
  }
  for (auto& t : pool) t.join();
}

// Runs fn over [0, n) in parallel blocks; returns the witness for the
// lexicographically first failing index. fn must be pure.
template <class Fn>
std::optional<Witness> scan_first_failure(std::size_t n, Fn&& fn) {
  std::optional<std::pair<std::size_t, Witness>> best;
  std::mutex guard;
  parallel_blocks(n, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      std::optional<Witness> w = fn(i);
      if (w) {
        std::lock_guard<std::mutex> lock(guard);
        if (!best || i < best->first) best = {i, std::move(*w)};
        break;  // blocks scan ascending, so the first hit is block-minimal
      }
    }
  });
  if (!best) return std::nullopt;
  return std::move(best->second);
}

}  // namespace herdkit
