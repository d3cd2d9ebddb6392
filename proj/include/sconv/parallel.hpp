#pragma once

#include <cstddef>
#include <functional>

namespace sconv {

// Deterministic data parallelism: bodies write to per-index slots, so the
// result is identical for any thread count. 0 means hardware concurrency.
void set_default_thread_count(unsigned n);
unsigned default_thread_count();

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace sconv
