#pragma once

#include <cstddef>
#include <functional>
#include <span>

#include "bergman/types.hpp"

namespace bergman {

/// Process-wide worker count used by parallel_for. Values < 1 are clamped to 1.
void set_worker_count(int jobs);
int worker_count();

/// Runs body(i) for i in [0, count) over worker_count() threads with static
/// contiguous chunks. Each index is visited exactly once; callers write to
/// disjoint slots, so results never depend on the worker count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

/// Pairwise (tree) summation with a fixed split pattern.
cplx pairwise_sum(std::span<const cplx> values);
double pairwise_sum(std::span<const double> values);

}  // namespace bergman
