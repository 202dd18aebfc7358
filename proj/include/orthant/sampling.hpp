#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

namespace orthant {

/// Counter-based uniform draw in [0, 1): a pure function of its arguments, so
/// sample i of a sweep is the same no matter which worker computes it.
double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t index,
                       std::uint64_t axis) noexcept;

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Worker count: hardware concurrency capped by ORTHANT_GUARD_THREADS.
std::size_t worker_count();

/// Runs body(i) for i in [0, count), possibly on several threads. Exceptions
/// are rethrown on the caller, lowest index first.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace orthant
