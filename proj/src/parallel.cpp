#include "bergman/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace bergman {

namespace {
std::atomic<int> g_workers{1};

template <typename T>
T tree_sum(std::span<const T> v) {
  constexpr std::size_t kLeaf = 32;
  if (v.size() <= kLeaf) {
    T acc{};
    for (const T& x : v) acc += x;
    return acc;
  }
  const std::size_t half = v.size() / 2;
  return tree_sum(v.first(half)) + tree_sum(v.subspan(half));
}
}  // namespace

void set_worker_count(int jobs) { g_workers = std::max(1, jobs); }
int worker_count() { return g_workers.load(); }

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const auto workers = static_cast<std::size_t>(worker_count());
  if (workers <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  const std::size_t used = std::min(workers, count);
  const std::size_t chunk = (count + used - 1) / used;
  std::vector<std::thread> pool;
  pool.reserve(used);
  // One slot per chunk so the rethrown error is the lowest-index one.
  std::vector<std::exception_ptr> errors(used);
  for (std::size_t w = 0; w < used; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, w, &body, &errors] {
      try {
        for (std::size_t i = lo; i < hi; ++i) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

cplx pairwise_sum(std::span<const cplx> values) { return tree_sum(values); }
double pairwise_sum(std::span<const double> values) { return tree_sum(values); }

}  // namespace bergman
