#ifndef POLYFOCK_PARALLEL_HPP
#define POLYFOCK_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace polyfock {

/// Worker count: hardware concurrency, capped by POLYFOCK_THREADS if set.
int thread_count();

/// Runs body(i) for i in [0, count), spread over thread_count() workers.
/// The first exception thrown by any call is rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace polyfock

#endif  // POLYFOCK_PARALLEL_HPP
