#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace relgraph {

/// Worker count: RELGRAPH_THREADS if set and positive, else hardware
/// concurrency (at least 1).
unsigned worker_count();

/// Runs body(i) for i in [0, count) on worker_count() threads. Indices are
/// handed out in contiguous blocks; the first exception thrown is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

/// Deterministic map: out[i] = fn(in[i]) regardless of scheduling.
template <class T, class Fn>
auto parallel_map(const std::vector<T>& in, Fn fn) -> std::vector<decltype(fn(in.front()))> {
  std::vector<decltype(fn(in.front()))> out(in.size());
  parallel_for(in.size(), [&](std::size_t i) { out[i] = fn(in[i]); });
  return out;
}

}  // namespace relgraph
