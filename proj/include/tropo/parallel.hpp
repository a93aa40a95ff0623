#pragma once

#include <cstddef>
#include <functional>

namespace tropo {

/// Worker count from TROPO_THREADS (default 1).
unsigned thread_count();
/// Runs body(i) for i in [0, n); results must be written to disjoint slots.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace tropo
