#pragma once

#include <cstddef>
#include <functional>

namespace geobell {

/// Worker count: GEOBELL_THREADS if set to a positive integer, otherwise the
/// hardware concurrency.
int threadCount();

/// Runs body(i) for i in [0, count) on up to threadCount() threads using a
/// static contiguous partition. Exceptions from workers are rethrown.
void parallelFor(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace geobell
