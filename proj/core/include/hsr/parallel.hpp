#pragma once

#include <cstddef>
#include <functional>

namespace hsr {

/// Worker count: HSR_THREADS if set and positive, else hardware concurrency.
std::size_t thread_count();

/// Runs body(i) for i in [0, n), split into contiguous blocks across threads.
/// Each index is visited exactly once, so results written per index are
/// independent of the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace hsr
