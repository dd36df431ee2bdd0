#pragma once

#include <functional>

namespace multidep {

// Runs fn(0) ... fn(count-1), split across up to `threads` worker threads.
// Callers make results thread-count independent by writing each task's output
// to a preallocated slot indexed by the task id.
void parallel_for(int count, int threads, const std::function<void(int)>& fn);

}  // namespace multidep
