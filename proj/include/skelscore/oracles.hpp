#pragma once

#include "skelscore/barcode.hpp"
#include "skelscore/geometry.hpp"

#include <cstddef>

namespace skelscore::oracle {

/// Exact H0 barcode by textbook boundary-matrix reduction over the full
/// Vietoris-Rips 1-skeleton: sort all pairwise edges, reduce each edge
/// column over Z2, pair negative edges with the vertex they kill. Kept
/// deliberately independent of the single-linkage implementation (own
/// distance code, no shared kernels). Guarded to n <= 30.
PersistenceBarcode oracle_h0_persistence(const PointCloud& cloud, double eps_max);

/// Exact bottleneck (p = 0 sentinel) or p-Wasserstein matching cost by
/// exhaustive enumeration over all diagonal-augmented bijections.
/// Guarded to at most 6 bars per barcode. For p >= 1 the returned value is
/// normalized by max(|a|, |b|), matching wasserstein_distance.
double oracle_matching_distance(const PersistenceBarcode& a, const PersistenceBarcode& b, int p);

inline double oracle_bottleneck(const PersistenceBarcode& a, const PersistenceBarcode& b) {
    return oracle_matching_distance(a, b, 0);
}

/// Covered fraction of the unit direction sphere around x, by lat-long grid
/// integration: a cell counts as covered when its center direction lies
/// within the pruning angular radius (prune_factor x median angular
/// nearest-neighbor spacing, computed brute-force) of some projected cloud
/// direction. Requires grid_resolution >= 64 latitude rows.
double oracle_sphere_coverage(const Vec3& x, const PointCloud& cloud,
                              std::size_t grid_resolution, double prune_factor = 3.0);

}  // namespace skelscore::oracle
