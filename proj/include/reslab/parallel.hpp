#pragma once

#include <cstddef>
#include <functional>

namespace reslab {

// worker count: RESONANCE_LAB_THREADS if set, else hardware concurrency
unsigned thread_budget();

// runs body(i) for i in [0, count); exceptions are rethrown on the caller
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace reslab
