#pragma once

#include <cstddef>
#include <exception>
#include <functional>

namespace faber {

/// Worker cap: set_worker_count() if called, else FABER_THREADS, else
/// hardware concurrency. 0 means auto in both places.
std::size_t worker_count();
void set_worker_count(std::size_t workers);

/// Runs body(i) for i in [0, count). Each index runs exactly once; callers
/// write results into per-index slots so output never depends on scheduling.
/// The first exception thrown by any body is rethrown after all workers stop.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace faber
