#pragma once

#include <cstddef>
#include <functional>

namespace dk {

/// Worker cap: DEFORMATION_KERNEL_THREADS when set (>= 1), otherwise
/// std::thread::hardware_concurrency().
int thread_cap();

/// Run fn(i) for i in [0, count) across at most thread_cap() workers.
/// Work items must be independent; callers own any reduction, which should
/// be indexed by i so results do not depend on the worker count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace dk
