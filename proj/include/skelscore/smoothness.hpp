#pragma once

#include "skelscore/execution.hpp"
#include "skelscore/geometry.hpp"
#include "skelscore/kdtree.hpp"
#include "skelscore/scores.hpp"

#include <cstddef>
#include <vector>

namespace skelscore {

struct SmoothnessOptions {
    int k = 8;  // neighbors for the PCA tangent
    int m = 5;  // neighbors entering the min-rule
    Execution exec = Execution::Parallel;
};

/// Dominant eigenvector of the local covariance over the k nearest
/// neighbors of point `index` (unit length, sign arbitrary). Throws when
/// fewer than 2 neighbors exist or all neighbors coincide with the point.
Vec3 pca_tangent(const std::vector<Vec3>& points, std::size_t index, int k,
                 const KdTree3& tree);
Vec3 pca_tangent(const SkeletalPointSet& skeletal, std::size_t index, int k);

/// Normalized angular dissimilarity D_n = arccos(cosine similarity) / pi,
/// in [0, 1]. Throws on a zero vector.
double direction_dissimilarity(const Vec3& t1, const Vec3& t2);

/// Per-point tangents; `valid[i]` is false where the tangent is degenerate.
struct TangentField {
    std::vector<Vec3> tangents;
    std::vector<char> valid;
};

TangentField compute_tangent_field(const std::vector<Vec3>& points, int k,
                                   Execution exec = Execution::Parallel);

/// Smoothness of one skeletal point: min over its m nearest neighbors of
/// |1 - 2 D_n(tangent_i, tangent_j)|, invalid when the tangent at i (or at
/// every neighbor) is degenerate.
ElementScore point_smoothness(std::size_t index, const std::vector<Vec3>& points,
                              const TangentField& field, int m, const KdTree3& tree);

std::vector<ElementScore> score_point_smoothness(const SkeletalPointSet& skeletal,
                                                 const SmoothnessOptions& options = {});

/// Smoothness of a curve-skeleton vertex: 1 when the degree differs from 2
/// (endpoint, joint, or isolated vertex), otherwise |1 - 2 D_n| of the two
/// incident edge vectors. Zero-length incident edges make it invalid; a
/// note flags fold-backs (turn angle above 135 degrees).
ElementScore vertex_smoothness(const CurveSkeleton& skeleton, std::size_t vertex,
                               const std::vector<std::vector<std::size_t>>& adjacency);

struct OverallSmoothness {
    double value = 0.0;
    std::size_t accounted = 0;
    bool valid = false;
};

/// Mean of valid per-point smoothness values.
OverallSmoothness overall_point_smoothness(const std::vector<ElementScore>& elements);

struct CurveSmoothnessResult {
    double value = 0.0;
    std::vector<ElementScore> vertices;
};

/// Edge-length weighted curve smoothness:
/// 1 - (1/W) * sum over degree-2 vertices of w_i * (1 - s(v_i)), where w_i
/// is half of each incident edge length summed and W the total edge length.
/// Throws when the total edge length is zero.
CurveSmoothnessResult overall_curve_smoothness(const CurveSkeleton& skeleton);

}  // namespace skelscore
