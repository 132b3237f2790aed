#pragma once

#include <cstddef>
#include <functional>

namespace opuc {

/// Worker count: hardware concurrency, capped by the OPUC_THREADS
/// environment variable when set.
int thread_count();

/// Runs body(i) for i in [0, count). Each index is processed exactly once;
/// results must only depend on i, which keeps output independent of the
/// number of workers.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace opuc
