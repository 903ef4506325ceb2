#include "skelscore/geometry.hpp"

#include "skelscore/kdtree.hpp"

#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>

namespace skelscore {

void validate_cloud(const PointCloud& cloud, const char* what) {
    if (cloud.empty())
        throw std::invalid_argument(std::string(what) + ": empty");
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const Vec3& p = cloud[i];
        if (!std::isfinite(p.x()) || !std::isfinite(p.y()) || !std::isfinite(p.z()))
            throw std::invalid_argument(std::string(what) + ": non-finite coordinate at index " +
                                        std::to_string(i));
    }
}

void SkeletalPointSet::validate_against(const PointCloud& original) const {
    if (points.empty())
        throw std::invalid_argument("skeletal point set: empty");
    if (correspondence.empty()) {
        if (points.size() != original.size())
            throw std::invalid_argument(
                "skeletal point set: identity correspondence requires equal cardinality (" +
                std::to_string(points.size()) + " vs " + std::to_string(original.size()) + ")");
        return;
    }
    if (correspondence.size() != points.size())
        throw std::invalid_argument("skeletal point set: correspondence not total");
    for (std::size_t idx : correspondence)
        if (idx >= original.size())
            throw std::invalid_argument("skeletal point set: correspondence index out of range");
}

SkeletalPointSet with_nearest_correspondence(std::vector<Vec3> points,
                                             const PointCloud& original) {
    validate_cloud(original, "original cloud");
    KdTree3 tree(original.points);
    SkeletalPointSet result;
    result.points = std::move(points);
    result.correspondence.resize(result.points.size());
    for (std::size_t i = 0; i < result.points.size(); ++i)
        result.correspondence[i] = tree.nearest(result.points[i]).index;
    return result;
}

double CurveSkeleton::total_length() const {
    double total = 0.0;
    for (std::size_t e = 0; e < edges.size(); ++e) total += edge_length(e);
    return total;
}

std::vector<std::vector<std::size_t>> CurveSkeleton::adjacency() const {
    std::vector<std::vector<std::size_t>> adj(vertices.size());
    for (std::size_t e = 0; e < edges.size(); ++e) {
        adj[edges[e].first].push_back(e);
        adj[edges[e].second].push_back(e);
    }
    return adj;
}

void CurveSkeleton::validate() const {
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        const Vec3& v = vertices[i];
        if (!std::isfinite(v.x()) || !std::isfinite(v.y()) || !std::isfinite(v.z()))
            throw std::invalid_argument("curve skeleton: non-finite vertex " + std::to_string(i));
    }
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto& [a, b] : edges) {
        if (a >= vertices.size() || b >= vertices.size())
            throw std::invalid_argument("curve skeleton: edge index out of range");
        if (a == b)
            throw std::invalid_argument("curve skeleton: self-loop at vertex " + std::to_string(a));
        auto key = std::minmax(a, b);
        if (!seen.insert({key.first, key.second}).second)
            throw std::invalid_argument("curve skeleton: duplicate edge (" + std::to_string(a) +
                                        ", " + std::to_string(b) + ")");
    }
}

PointCloud SimilarityTransform::apply(const PointCloud& cloud) const {
    PointCloud out;
    out.points.reserve(cloud.size());
    for (const Vec3& p : cloud.points) out.points.push_back(apply(p));
    return out;
}

SkeletalPointSet SimilarityTransform::apply(const SkeletalPointSet& skeletal) const {
    SkeletalPointSet out;
    out.points.reserve(skeletal.points.size());
    for (const Vec3& p : skeletal.points) out.points.push_back(apply(p));
    out.correspondence = skeletal.correspondence;
    return out;
}

CurveSkeleton SimilarityTransform::apply(const CurveSkeleton& skeleton) const {
    CurveSkeleton out;
    out.vertices.reserve(skeleton.vertices.size());
    for (const Vec3& v : skeleton.vertices) out.vertices.push_back(apply(v));
    out.edges = skeleton.edges;
    return out;
}

namespace {

std::pair<Vec3, Vec3> bounding_box(const PointCloud& cloud) {
    Vec3 lo = cloud[0];
    Vec3 hi = cloud[0];
    for (const Vec3& p : cloud.points) {
        lo = lo.cwiseMin(p);
        hi = hi.cwiseMax(p);
    }
    return {lo, hi};
}

}  // namespace

double bounding_box_diagonal(const PointCloud& cloud) {
    validate_cloud(cloud);
    auto [lo, hi] = bounding_box(cloud);
    return (hi - lo).norm();
}

std::pair<PointCloud, SimilarityTransform>
normalize_to_diagonal(const PointCloud& cloud, double target) {
    validate_cloud(cloud);
    if (!(target > 0.0))
        throw std::invalid_argument("normalize_to_diagonal: target must be positive");
    auto [lo, hi] = bounding_box(cloud);
    const double diagonal = (hi - lo).norm();
    if (diagonal <= 0.0)
        throw std::invalid_argument("normalize_to_diagonal: zero bounding-box diagonal");

    SimilarityTransform transform;
    transform.scale = target / diagonal;
    const Vec3 center = 0.5 * (lo + hi);
    transform.offset = center - transform.scale * center;
    return {transform.apply(cloud), transform};
}

}  // namespace skelscore
