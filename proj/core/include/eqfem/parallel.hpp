#pragma once

#include <cstddef>
#include <functional>

namespace eqfem {

/// Worker count from EQUALITY_FEM_THREADS (default 1, clamped to [1, 256]).
std::size_t thread_count();

/// Calls body(begin, end) over contiguous chunks of [0, n). Chunk boundaries depend only on
/// n and the thread count; callers write into per-index slots and reduce in index order.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace eqfem
