#pragma once

#include <cstddef>
#include <functional>

namespace robust_synth {

/// Worker count used by every data-parallel loop. 0 restores the default
/// (ROBUST_SYNTH_THREADS, else hardware concurrency).
void set_thread_count(unsigned n);
unsigned thread_count();

/// Calls body(begin, end) on contiguous chunks of [0, n). Chunks write to
/// disjoint outputs, so results do not depend on the worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace robust_synth
