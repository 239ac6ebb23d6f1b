#pragma once

#include <functional>

namespace votfmid {

/// Worker count used by parallel_for. Defaults to the machine parallelism,
/// capped by the VO_TFMID_THREADS environment variable (read once).
int worker_count();

/// Splits [0, n) into contiguous chunks and runs fn(begin, end) on each,
/// possibly on different threads. Every index is owned by exactly one chunk,
/// so elementwise writes are race-free and results do not depend on the
/// number of workers.
void parallel_for(int n, const std::function<void(int, int)>& fn);

}  // namespace votfmid
