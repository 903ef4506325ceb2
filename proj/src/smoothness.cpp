#include "skelscore/smoothness.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace skelscore {

Vec3 pca_tangent(const std::vector<Vec3>& points, std::size_t index, int k,
                 const KdTree3& tree) {
    if (k < 2) throw std::invalid_argument("pca_tangent: require k >= 2");
    const auto neighbors = tree.k_nearest(points[index], static_cast<std::size_t>(k), index);
    if (neighbors.size() < 2)
        throw std::invalid_argument("pca_tangent: fewer than 2 neighbors available");

    Eigen::Matrix3d covariance = Eigen::Matrix3d::Zero();
    for (const auto& hit : neighbors) {
        const Vec3 d = points[hit.index] - points[index];
        covariance += d * d.transpose();
    }
    covariance /= static_cast<double>(neighbors.size());
    if (covariance.norm() <= 1e-24)
        throw std::invalid_argument("pca_tangent: degenerate tangent (coincident neighbors)");

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(covariance);
    return solver.eigenvectors().col(2).normalized();  // eigenvalues ascending
}

Vec3 pca_tangent(const SkeletalPointSet& skeletal, std::size_t index, int k) {
    KdTree3 tree(skeletal.points);
    return pca_tangent(skeletal.points, index, k, tree);
}

double direction_dissimilarity(const Vec3& t1, const Vec3& t2) {
    const double n1 = t1.norm(), n2 = t2.norm();
    if (n1 <= 0.0 || n2 <= 0.0)
        throw std::invalid_argument("direction_dissimilarity: zero vector");
    const double cosine = std::clamp(t1.dot(t2) / (n1 * n2), -1.0, 1.0);
    return std::acos(cosine) / M_PI;
}

TangentField compute_tangent_field(const std::vector<Vec3>& points, int k, Execution exec) {
    TangentField field;
    field.tangents.assign(points.size(), Vec3::Zero());
    field.valid.assign(points.size(), 0);
    KdTree3 tree(points);

    const long long n = static_cast<long long>(points.size());
    const int threads = effective_threads();
    const bool parallel = exec == Execution::Parallel && threads > 1 && n > 1;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(threads) if (parallel)
#endif
    for (long long i = 0; i < n; ++i) {
        try {
            field.tangents[i] = pca_tangent(points, static_cast<std::size_t>(i), k, tree);
            field.valid[i] = 1;
        } catch (const std::exception&) {
            field.valid[i] = 0;
        }
    }
    return field;
}

ElementScore point_smoothness(std::size_t index, const std::vector<Vec3>& points,
                              const TangentField& field, int m, const KdTree3& tree) {
    ElementScore score;
    score.element = index;
    if (!field.valid[index]) {
        score.valid = false;
        score.reason = invalid_reason::degenerate_tangent;
        return score;
    }
    const auto neighbors = tree.k_nearest(points[index], static_cast<std::size_t>(std::max(m, 1)),
                                          index);
    double best = 2.0;
    for (const auto& hit : neighbors) {
        if (!field.valid[hit.index]) continue;
        const double dn = direction_dissimilarity(field.tangents[index], field.tangents[hit.index]);
        best = std::min(best, std::abs(1.0 - 2.0 * dn));
    }
    if (best > 1.0) {  // no neighbor had a usable tangent
        score.valid = false;
        score.reason = invalid_reason::too_few_neighbors;
        return score;
    }
    score.value = best;
    return score;
}

std::vector<ElementScore> score_point_smoothness(const SkeletalPointSet& skeletal,
                                                 const SmoothnessOptions& options) {
    const auto& points = skeletal.points;
    const TangentField field = compute_tangent_field(points, options.k, options.exec);
    KdTree3 tree(points);
    std::vector<ElementScore> scores(points.size());

    const long long n = static_cast<long long>(points.size());
    const int threads = effective_threads();
    const bool parallel = options.exec == Execution::Parallel && threads > 1 && n > 1;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(threads) if (parallel)
#endif
    for (long long i = 0; i < n; ++i)
        scores[i] = point_smoothness(static_cast<std::size_t>(i), points, field, options.m, tree);
    return scores;
}

ElementScore vertex_smoothness(const CurveSkeleton& skeleton, std::size_t vertex,
                               const std::vector<std::vector<std::size_t>>& adjacency) {
    ElementScore score;
    score.element = vertex;
    const auto& incident = adjacency[vertex];
    if (incident.size() != 2) {
        score.value = 1.0;  // endpoint, joint, or isolated: no tangent change
        return score;
    }
    Vec3 arms[2];
    for (int side = 0; side < 2; ++side) {
        const auto& edge = skeleton.edges[incident[side]];
        const std::size_t other = edge.first == vertex ? edge.second : edge.first;
        arms[side] = skeleton.vertices[other] - skeleton.vertices[vertex];
        if (arms[side].norm() <= 0.0) {
            score.valid = false;
            score.reason = invalid_reason::zero_length_edge;
            return score;
        }
    }
    const double dn = direction_dissimilarity(arms[0], arms[1]);
    score.value = std::abs(1.0 - 2.0 * dn);
    if (dn < 0.25) score.reason = score_note::fold_back;  // vectors within 45 degrees
    return score;
}

OverallSmoothness overall_point_smoothness(const std::vector<ElementScore>& elements) {
    OverallSmoothness overall;
    double sum = 0.0;
    for (const ElementScore& score : elements) {
        if (!score.valid) continue;
        sum += score.value;
        ++overall.accounted;
    }
    overall.valid = overall.accounted > 0;
    overall.value = overall.valid ? sum / static_cast<double>(overall.accounted) : 0.0;
    return overall;
}

CurveSmoothnessResult overall_curve_smoothness(const CurveSkeleton& skeleton) {
    const double total_length = skeleton.total_length();
    if (!(total_length > 0.0))
        throw std::invalid_argument("overall_curve_smoothness: zero total edge length");

    const auto adjacency = skeleton.adjacency();
    CurveSmoothnessResult result;
    result.vertices.reserve(skeleton.vertex_count());

    double penalty = 0.0;
    for (std::size_t v = 0; v < skeleton.vertex_count(); ++v) {
        ElementScore score = vertex_smoothness(skeleton, v, adjacency);
        if (score.valid && adjacency[v].size() == 2) {
            const double weight = 0.5 * (skeleton.edge_length(adjacency[v][0]) +
                                         skeleton.edge_length(adjacency[v][1]));
            penalty += weight * (1.0 - score.value);
        }
        result.vertices.push_back(std::move(score));
    }
    result.value = 1.0 - penalty / total_length;
    return result;
}

}  // namespace skelscore
