#pragma once

#include <cstddef>
#include <functional>

namespace mixsch {

/// Runs body(0) ... body(n-1) on up to `jobs` threads (0 means hardware
/// concurrency). Indices are handed out in order; the first exception thrown
/// by any body is rethrown after all workers finish.
void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)>& body);

/// Default worker count: std::thread::hardware_concurrency(), at least 1.
std::size_t default_jobs();

}  // namespace mixsch
