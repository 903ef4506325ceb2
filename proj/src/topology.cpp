#include "skelscore/topology.hpp"

#include "skelscore/barcode_distance.hpp"
#include "skelscore/kdtree.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace skelscore {

double nearest_neighbor_threshold(const PointCloud& cloud) {
    validate_cloud(cloud);
    if (cloud.size() < 2)
        throw std::invalid_argument("nearest_neighbor_threshold: need at least 2 points");
    KdTree3 tree(cloud.points);
    double sup = 0.0;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const auto hit = tree.nearest(cloud[i], i);
        sup = std::max(sup, hit.dist2);
    }
    return std::sqrt(sup);
}

std::vector<FiltrationEdge> filtration_edges(const PointCloud& cloud, double eps_max) {
    validate_cloud(cloud);
    if (!(eps_max > 0.0))
        throw std::invalid_argument("filtration_edges: eps_max must be positive");
    std::vector<FiltrationEdge> edges;
    const std::size_t n = cloud.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double length = (cloud[i] - cloud[j]).norm();
            if (length < eps_max)
                edges.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                                 length});
        }
    std::sort(edges.begin(), edges.end(), [](const FiltrationEdge& a, const FiltrationEdge& b) {
        if (a.length != b.length) return a.length < b.length;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    });
    return edges;
}

PersistenceBarcode filter_barcode(const PersistenceBarcode& barcode, double eps_star) {
    if (eps_star < 0.0)
        throw std::invalid_argument("filter_barcode: eps_star must be non-negative");
    PersistenceBarcode out;
    for (const PersistenceBar& bar : barcode.bars)
        if (bar.persistence() >= eps_star) out.bars.push_back(bar);
    return out;
}

namespace {

// Single-linkage merge radii of the complete Euclidean graph, computed with
// Prim's scan: the multiset of MST edge weights equals the set of component
// merge radii, which is all the H0 persistence needs. O(n^2) time, O(n)
// memory; no edge list is materialized.
std::vector<double> single_linkage_merge_radii(const std::vector<Vec3>& pts, Execution exec) {
    const std::size_t n = pts.size();
    std::vector<double> best(n, std::numeric_limits<double>::infinity());
    std::vector<char> in_tree(n, 0);
    std::vector<double> radii;
    radii.reserve(n - 1);

    std::size_t current = 0;
    in_tree[0] = 1;

    const int threads = effective_threads();
    const bool parallel = exec == Execution::Parallel && threads > 1 && n >= 512;

    for (std::size_t added = 1; added < n; ++added) {
        const Vec3 anchor = pts[current];
        std::size_t arg = KdTree3::npos;
        double min2 = std::numeric_limits<double>::infinity();
        if (parallel) {
#ifdef _OPENMP
#pragma omp parallel num_threads(threads)
            {
                std::size_t local_arg = KdTree3::npos;
                double local_min = std::numeric_limits<double>::infinity();
#pragma omp for nowait
                for (long long j = 0; j < static_cast<long long>(n); ++j) {
                    if (in_tree[j]) continue;
                    const double d2 = (pts[j] - anchor).squaredNorm();
                    if (d2 < best[j]) best[j] = d2;
                    if (best[j] < local_min ||
                        (best[j] == local_min && static_cast<std::size_t>(j) < local_arg)) {
                        local_min = best[j];
                        local_arg = static_cast<std::size_t>(j);
                    }
                }
#pragma omp critical
                {
                    if (local_min < min2 || (local_min == min2 && local_arg < arg)) {
                        min2 = local_min;
                        arg = local_arg;
                    }
                }
            }
#endif
        } else {
            for (std::size_t j = 0; j < n; ++j) {
                if (in_tree[j]) continue;
                const double d2 = (pts[j] - anchor).squaredNorm();
                if (d2 < best[j]) best[j] = d2;
                if (best[j] < min2 || (best[j] == min2 && j < arg)) {
                    min2 = best[j];
                    arg = j;
                }
            }
        }
        in_tree[arg] = 1;
        radii.push_back(std::sqrt(min2));
        current = arg;
    }
    std::sort(radii.begin(), radii.end());
    return radii;
}

}  // namespace

PersistenceBarcode h0_barcode(const PointCloud& cloud, double eps_max, Execution exec) {
    validate_cloud(cloud);
    if (!(eps_max > 0.0))
        throw std::invalid_argument("h0_barcode: eps_max must be positive");

    PersistenceBarcode barcode;
    barcode.bars.reserve(cloud.size());
    if (cloud.size() == 1) {
        barcode.bars.push_back({0.0, eps_max, true});
        return barcode;
    }

    const std::vector<double> radii = single_linkage_merge_radii(cloud.points, exec);
    std::size_t components = 1;  // every merge beyond the cap leaves one more component
    for (double radius : radii) {
        if (radius < eps_max)
            barcode.bars.push_back({0.0, radius, false});
        else
            ++components;
    }
    for (std::size_t c = 0; c < components; ++c) barcode.bars.push_back({0.0, eps_max, true});
    return barcode;
}

TopologyResult topological_similarity(const PointCloud& original, const PointCloud& skeletal,
                                      const TopologyOptions& options) {
    if (!(options.d_star > 0.0) || options.d_star > options.epsilon_max)
        throw std::invalid_argument("topological_similarity: require 0 < d* <= eps_max");
    if (options.wasserstein_p < 1)
        throw std::invalid_argument("topological_similarity: require p >= 1");

    TopologyResult result;
    result.epsilon_star = nearest_neighbor_threshold(original);
    result.wasserstein_p = options.wasserstein_p;

    const PersistenceBarcode original_bars =
        filter_barcode(h0_barcode(original, options.epsilon_max, options.exec), result.epsilon_star);
    const PersistenceBarcode skeletal_bars =
        filter_barcode(h0_barcode(skeletal, options.epsilon_max, options.exec), result.epsilon_star);

    result.bars_original = original_bars.size();
    result.bars_skeletal = skeletal_bars.size();
    result.n_b = std::max(original_bars.size(), skeletal_bars.size());
    result.bottleneck = bottleneck_distance(original_bars, skeletal_bars);
    result.wasserstein = wasserstein_distance(original_bars, skeletal_bars, options.wasserstein_p);
    result.classification = classify_similarity(result.bottleneck, options.d_star);
    return result;
}

}  // namespace skelscore
