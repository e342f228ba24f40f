#pragma once

#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace slewind {

// Worker cap: --threads flag, else WINDING_THREADS, else hardware концurrency.
int max_threads();
void set_max_threads(int n);

// Runs fn(i) for i in [0, n) on up to max_threads() workers. Chunked by index;
// any reduction the caller performs must be stored per-index or per-chunk so
// results stay independent of the schedule.
void parallel_for(long n, const std::function<void(long)>& fn);

}  // namespace slewind
