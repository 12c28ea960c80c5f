#pragma once

#include <cstddef>
#include <functional>

namespace nisim {

/// Worker count honouring NISIM_THREADS (unset or 0 means hardware concurrency).
std::size_t worker_count();

/// Runs body(i) for i in [0, count). Each index is visited exactly once; the
/// caller writes results into per-index slots so output order never depends
/// on scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace nisim
