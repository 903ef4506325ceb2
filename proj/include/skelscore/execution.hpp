#pragma once

namespace skelscore {

/// Batch kernels run either as a plain serial loop (the reference
/// implementation) or as an OpenMP-parallel loop over elements. Both paths
/// compute each element with the same code, so results are bit-identical.
enum class Execution { Serial, Parallel };

/// Worker count for parallel kernels: `requested` if positive, otherwise the
/// OpenMP default, both capped by the SKELSCORE_THREADS environment variable.
int effective_threads(int requested = 0);

}  // namespace skelscore
