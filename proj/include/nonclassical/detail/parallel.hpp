#ifndef NONCLASSICAL_DETAIL_PARALLEL_HPP_
#define NONCLASSICAL_DETAIL_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace nonclassical::detail {

/// Worker count from NONCLASSICAL_WORKERS, else the hardware concurrency.
unsigned worker_count();

/// Calls body(i) for i in [0, n) on the worker pool. Each index writes only
/// its own output slot, so results do not depend on scheduling. The first
/// exception by index order is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace nonclassical::detail

#endif  // NONCLASSICAL_DETAIL_PARALLEL_HPP_
