#pragma once

#include <functional>

namespace molt {

/// Worker count used by the line-parallel loops. Starts from MOLT_THREADS
/// when set, otherwise 1.
int thread_count();
void set_thread_count(int n);

/// Splits [0, n) into contiguous chunks, one per worker, and runs
/// body(begin, end) on each. Runs inline when one worker suffices.
void parallel_for(int n, const std::function<void(int begin, int end)> &body);

} // namespace molt
