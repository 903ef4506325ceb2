#pragma once

#include "skelscore/barcode.hpp"
#include "skelscore/execution.hpp"
#include "skelscore/geometry.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace skelscore {

/// Maximum nearest-neighbor distance over all points of the cloud
/// (the barcode filtering threshold). Requires n >= 2.
double nearest_neighbor_threshold(const PointCloud& cloud);

/// 1-simplex of the Vietoris-Rips filtration: the pair (i, j) with i < j
/// appears at radius `length`. H0 depends only on this 1-skeleton.
struct FiltrationEdge {
    std::uint32_t i = 0;
    std::uint32_t j = 0;
    double length = 0.0;
};

/// Explicit 1-skeleton below the radius cap, sorted by (length, i, j).
/// O(n^2) pairs; the barcode computation itself uses a minimum-spanning
/// scan and never materializes this list, so this is an inspection and
/// testing surface.
std::vector<FiltrationEdge> filtration_edges(const PointCloud& cloud, double eps_max);

/// H0 persistence barcode of the Vietoris-Rips filtration of the cloud.
///
/// One bar per point, all born at 0. Non-essential deaths are the merge
/// radii of single-linkage clustering (the Euclidean minimum-spanning-tree
/// edge weights below eps_max), listed in ascending order; one essential
/// bar per connected component at eps_max, capped at eps_max, appended last.
PersistenceBarcode h0_barcode(const PointCloud& cloud, double eps_max,
                              Execution exec = Execution::Parallel);

enum class SimilarityClass { High, Low };

struct TopologyOptions {
    double epsilon_max = 1.6;   // filtration cap (post-normalization diagonal)
    double d_star = 0.02;       // classification threshold on the bottleneck distance
    int wasserstein_p = 1;
    Execution exec = Execution::Parallel;
};

struct TopologyResult {
    double epsilon_star = 0.0;      // filtering threshold, from the original cloud
    double bottleneck = 0.0;        // d_B between the filtered barcodes
    double wasserstein = 0.0;       // normalized d_Wp between the filtered barcodes
    int wasserstein_p = 1;
    std::size_t n_b = 0;            // normalization count used for d_Wp
    std::size_t bars_original = 0;  // filtered bar counts
    std::size_t bars_skeletal = 0;
    SimilarityClass classification = SimilarityClass::High;
};

inline const char* to_string(SimilarityClass c) {
    return c == SimilarityClass::High ? "high" : "low";
}

/// Classification rule: High Similarity iff d_B < d_star.
inline SimilarityClass classify_similarity(double d_bottleneck, double d_star) {
    return d_bottleneck < d_star ? SimilarityClass::High : SimilarityClass::Low;
}

/// Full pipeline: eps* from the original cloud, both H0 barcodes, both
/// filtered with that eps*, bottleneck + Wasserstein distances, and the
/// High/Low classification on d_B. Expects both clouds already normalized
/// to the common bounding box (diagonal epsilon_max).
TopologyResult topological_similarity(const PointCloud& original, const PointCloud& skeletal,
                                      const TopologyOptions& options = {});

inline TopologyResult topological_similarity(const PointCloud& original,
                                             const SkeletalPointSet& skeletal,
                                             const TopologyOptions& options = {}) {
    return topological_similarity(original, skeletal.as_cloud(), options);
}

}  // namespace skelscore
