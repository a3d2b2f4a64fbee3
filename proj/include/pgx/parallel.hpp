#pragma once

#include <cstddef>
#include <functional>

namespace pgx {

/// Worker count used when a caller passes threads = 0.
unsigned default_threads();

/// Runs body(i) for every i in [0, n) on up to `threads` workers (0 means
/// default_threads()). Indices are handed out dynamically; body must only
/// write to state owned by index i. The first exception thrown by any body is
/// rethrown after all workers finish.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace pgx
