#pragma once

#include <cstddef>
#include <functional>

namespace dyadic_ns::detail {

/// Worker cap: DYADIC_NS_THREADS if set and positive, else the hardware
/// concurrency.
unsigned worker_count();

/// Runs body(i) for i in [0, count). Iterations must be independent; results
/// do not depend on the number of workers.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace dyadic_ns::detail
