#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <utility>
#include <vector>

namespace skelscore {

using Vec3 = Eigen::Vector3d;
using Vec2 = Eigen::Vector2d;

/// Ordered list of 3D points. Index order is stable: no operation reorders
/// points, so index-based correspondences stay valid.
struct PointCloud {
    std::vector<Vec3> points;

    std::size_t size() const { return points.size(); }
    bool empty() const { return points.empty(); }
    const Vec3& operator[](std::size_t i) const { return points[i]; }
    Vec3& operator[](std::size_t i) { return points[i]; }
};

/// Throws std::invalid_argument if the cloud is empty or contains a
/// non-finite coordinate.
void validate_cloud(const PointCloud& cloud, const char* what = "point cloud");

/// Contracted point set plus an index correspondence into the original
/// cloud. An empty correspondence means identity (skeletal point i maps to
/// original point i), which requires equal cardinality with the original.
struct SkeletalPointSet {
    std::vector<Vec3> points;
    std::vector<std::size_t> correspondence;

    bool identity_correspondence() const { return correspondence.empty(); }
    std::size_t corresponding(std::size_t i) const {
        return correspondence.empty() ? i : correspondence[i];
    }
    std::size_t size() const { return points.size(); }

    PointCloud as_cloud() const { return PointCloud{points}; }

    /// Checks cardinality/range of the correspondence against the original.
    void validate_against(const PointCloud& original) const;
};

/// Builds an explicit correspondence by nearest neighbor in the original
/// cloud, for skeletonization methods without index alignment.
SkeletalPointSet with_nearest_correspondence(std::vector<Vec3> points,
                                             const PointCloud& original);

/// Curve skeleton as an undirected graph of 3D vertices.
struct CurveSkeleton {
    std::vector<Vec3> vertices;
    std::vector<std::pair<std::size_t, std::size_t>> edges;

    std::size_t vertex_count() const { return vertices.size(); }
    std::size_t edge_count() const { return edges.size(); }
    double edge_length(std::size_t e) const {
        return (vertices[edges[e].first] - vertices[edges[e].second]).norm();
    }
    double total_length() const;

    /// Per-vertex incident edge lists; index = vertex, value = edge indices.
    std::vector<std::vector<std::size_t>> adjacency() const;

    /// Throws std::invalid_argument on self-loops, duplicate edges, indices
    /// out of range, or non-finite vertex coordinates.
    void validate() const;
};

/// Joint vertex: degree greater than two.
inline bool is_joint_degree(std::size_t degree) { return degree > 2; }

/// Uniform scale followed by translation: apply(x) = scale * x + offset.
struct SimilarityTransform {
    double scale = 1.0;
    Vec3 offset = Vec3::Zero();

    Vec3 apply(const Vec3& x) const { return scale * x + offset; }
    PointCloud apply(const PointCloud& cloud) const;
    SkeletalPointSet apply(const SkeletalPointSet& skeletal) const;
    CurveSkeleton apply(const CurveSkeleton& skeleton) const;
};

/// Euclidean length of the axis-aligned bounding-box diagonal.
/// Throws std::invalid_argument on an empty cloud.
double bounding_box_diagonal(const PointCloud& cloud);

/// Uniform scale about the bounding-box center so the diagonal equals
/// `target`. Returns the scaled cloud and the transform that was applied,
/// so the identical transform can be applied to the paired skeleton.
/// Throws std::invalid_argument if the diagonal is zero.
std::pair<PointCloud, SimilarityTransform>
normalize_to_diagonal(const PointCloud& cloud, double target = 1.6);

}  // namespace skelscore
