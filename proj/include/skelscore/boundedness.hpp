#pragma once

#include "skelscore/execution.hpp"
#include "skelscore/geometry.hpp"
#include "skelscore/scores.hpp"

#include <array>
#include <cstddef>
#include <vector>

namespace skelscore {

struct BoundednessOptions {
    double prune_factor = 3.0;  // triangles with a longer angular edge are discarded
    double beta_star = 0.75;
    bool bounded_if_geq = true;  // see is_bounded
    Execution exec = Execution::Parallel;
};

/// Unit direction vectors from x to every cloud point. Cloud points
/// coinciding with x are skipped; throws std::invalid_argument when every
/// point coincides ("degenerate query").
std::vector<Vec3> project_to_unit_sphere(const Vec3& x, const PointCloud& cloud);

/// Equal-area sinusoidal projection of a unit direction:
/// x_p = cos(latitude) * longitude, y_p = latitude, with quadrant-aware
/// angles (longitude in (-pi, pi], latitude in [-pi/2, pi/2]).
Vec2 sinusoidal_project(const Vec3& unit_direction);

/// Sphere-coverage computation record for one query point.
struct SphereCoverage {
    double area = 0.0;             // total spherical area of surviving triangles
    double median_spacing = 0.0;   // median angular nearest-neighbor spacing
    std::size_t kept = 0;          // surviving triangle count
    std::size_t pruned = 0;        // triangles dropped by the edge-length rule
    std::vector<std::array<int, 3>> triangles;  // populated on request only

    double beta() const;           // area / (4 pi), clamped to [0, 1]
};

/// Covered area of the unit sphere: Delaunay-triangulates the sinusoidal
/// projection (with seam duplication), discards triangles whose longest
/// angular edge exceeds prune_factor x the median angular nearest-neighbor
/// spacing, and sums spherical-excess areas of the survivors. Fewer than 3
/// directions (or a collinear projection) give area 0.
SphereCoverage covered_area(const std::vector<Vec3>& directions, double prune_factor,
                            bool keep_triangles = false);

/// Boundedness metric beta = S / (4 pi r^2) with r = 1, clamped to [0, 1].
double boundedness_score(const Vec3& x, const PointCloud& cloud, double prune_factor = 3.0);

/// Bounded test. The proposition's literal inequality (beta < beta*)
/// contradicts its own proof and figures, so the default is beta >= beta*;
/// pass geq = false to apply the literal form.
bool is_bounded(double beta, double beta_star, bool geq = true);

/// One evenly-spaced sample of a curve skeleton, tagged with its edge and
/// parameter: position = (1 - t) * v_first + t * v_second.
struct CurveSample {
    std::size_t edge = 0;
    double t = 0.0;
    Vec3 position = Vec3::Zero();
};

/// Evenly samples ~n_target points over all edges, counts proportional to
/// edge length (at least the two endpoints per positive-length edge);
/// zero-length edges contribute a single sample at the coincident vertex.
/// Requires at least one edge and n_target >= 2.
std::vector<CurveSample> sample_curve_points(const CurveSkeleton& skeleton,
                                             std::size_t n_target);

struct OverallBoundedness {
    std::vector<ElementScore> elements;
    std::size_t bounded = 0;
    std::size_t accounted = 0;  // valid elements
    double ratio = 0.0;         // bounded / accounted
    bool valid = false;         // false when no element could be scored
};

/// Fraction of skeletal points bounded by the original cloud.
OverallBoundedness overall_boundedness_points(const SkeletalPointSet& skeletal,
                                              const PointCloud& original,
                                              const BoundednessOptions& options = {});

/// Fraction of bounded curve samples (N_sp evenly sampled points).
OverallBoundedness overall_boundedness_curve(const CurveSkeleton& skeleton,
                                             const PointCloud& original, std::size_t n_sp,
                                             const BoundednessOptions& options = {});

}  // namespace skelscore
