#pragma once

#include <cstddef>
#include <functional>

namespace spreclone {

/// Worker count: SPRECLONE_THREADS if set and positive, else the hardware
/// concurrency (at least 1).
int worker_count();

/// Calls body(i) for every i in [0, n), spreading indices over workers.
/// Results must be written to per-index slots; the first exception thrown
/// by any worker is rethrown after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace spreclone
