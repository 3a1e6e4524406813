#include "relgraph/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

namespace relgraph {

unsigned worker_count() {
  if (const char* env = std::getenv("RELGRAPH_THREADS")) {
    try {
      const long value = std::stol(env);
      if (value > 0) return static_cast<unsigned>(std::min(value, 256L));
    } catch (const std::exception&) {
      // fall through to the hardware default
    }
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

namespace {
// Nested calls run inline instead of multiplying threads.
thread_local bool inside_pool = false;
}  // namespace

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(worker_count(), count));
  if (workers <= 1 || inside_pool) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const std::size_t block = std::max<std::size_t>(1, count / (workers * 8));
  auto run = [&] {
    const bool was_inside = inside_pool;
    inside_pool = true;
    struct Restore {
      bool value;
      ~Restore() { inside_pool = value; }
    } restore{was_inside};
    for (;;) {
      const std::size_t start = next.fetch_add(block);
      if (start >= count) return;
      const std::size_t stop = std::min(count, start + block);
      try {
        for (std::size_t i = start; i < stop; ++i) body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (unsigned t = 1; t < workers; ++t) pool.emplace_back(run);
  run();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace relgraph
