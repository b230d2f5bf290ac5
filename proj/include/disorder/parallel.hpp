#pragma once

#include <cstddef>
#include <functional>

namespace disorder {

/// Runs fn(i) for i in [0, n). With n_threads == 0 the hardware concurrency
/// is used; with n_threads == 1 everything runs inline. Each index must write
/// only to its own output slot, so results do not depend on the schedule.
void parallel_for(std::size_t n, unsigned n_threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace disorder
