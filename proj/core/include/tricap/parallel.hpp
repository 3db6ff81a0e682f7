#pragma once

#include <functional>

namespace tricap {

/// Worker count used by the row-parallel stencil kernels. 1 = serial.
void set_thread_count(int n);
int thread_count();

/// Splits [begin, end) into contiguous blocks, one per worker.
void parallel_for(int begin, int end, const std::function<void(int, int)>& body);

} // namespace tricap
