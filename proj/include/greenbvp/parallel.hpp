#pragma once

#include <cstddef>
#include <functional>

namespace greenbvp {

// Worker count: hardware concurrency, capped by GREENBVP_THREADS if set.
unsigned thread_count();

// Runs body(i) for i in [begin, end) on up to thread_count() threads using
// contiguous static chunks. Each index is processed exactly once, so results
// written per index are independent of the thread count.
void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t)>& body);

}  // namespace greenbvp
