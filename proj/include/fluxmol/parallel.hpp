#pragma once

#include <functional>

namespace fluxmol {

/// Worker cap: FLUXMOL_THREADS if set (>=1), else hardware concurrency.
int max_threads();

/// Runs fn(0..n-1) across up to `threads` workers (0 = max_threads()).
/// Each index is processed exactly once; callers write results into
/// per-index slots, so output does not depend on scheduling.
void parallel_for(int n, const std::function<void(int)>& fn, int threads = 0);

}  // namespace fluxmol
