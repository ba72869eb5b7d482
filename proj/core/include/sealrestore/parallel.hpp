#pragma once

#include <cstddef>
#include <functional>

namespace sealrestore {

/// Logical core count, at least 1.
int default_jobs() noexcept;

/// Runs fn(0..n-1) on up to `jobs` worker threads. Items are claimed in index
/// order; the first exception thrown by any item is rethrown after all workers join.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn);

}  // namespace sealrestore
