#pragma once

#include <cstddef>
#include <functional>

namespace octodpw {

/// Worker count: OCTO_DPW_THREADS if set and positive, else hardware concurrency.
unsigned thread_count();

/// Runs body(k) for k in [0, n), split into contiguous blocks. Results must not
/// depend on scheduling; the first exception thrown is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace octodpw
