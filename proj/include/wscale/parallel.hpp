#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace wscale {

// Worker count for parallel sections: explicit request if positive, else the
// RS_THREADS env var, else hardware concurrency. 0 means "auto" throughout.
std::size_t resolve_threads(std::size_t requested = 0);

// Runs fn(0..n-1) on up to resolve_threads(threads) workers. Indices are
// dealt round-robin by worker, so each index always runs exactly once and
// results written to pre-sized slots are identical for any thread count.
// The first exception thrown by any fn is rethrown on the caller.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn,
                  std::size_t threads = 0);

}  // namespace wscale
