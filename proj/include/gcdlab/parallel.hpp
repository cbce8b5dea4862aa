#pragma once

#include <cstddef>
#include <functional>

namespace gcdlab {

/// Runs fn(0..count-1) on up to `threads` workers. Work is claimed through an
/// atomic index; callers store results by index, so output is deterministic
/// regardless of the thread count.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace gcdlab
