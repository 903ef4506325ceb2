#pragma once

#include "skelscore/boundedness.hpp"  // CurveSample
#include "skelscore/execution.hpp"
#include "skelscore/geometry.hpp"
#include "skelscore/scores.hpp"

#include <cstddef>
#include <vector>

namespace skelscore {

struct CenterednessOptions {
    int k = 8;                       // skeletal-point KNN size
    double alpha = 0.5;              // slab factor in eps_p = alpha * min edge length
    double point_threshold = 0.75;   // c*, strict >
    double curve_threshold = 0.75;   // c-fraktur*, strict >
    double joint_tolerance = 1e-9;   // x bounding-box diagonal
    Execution exec = Execution::Parallel;
};

/// Centeredness of skeletal point i from its k nearest skeletal neighbors:
/// c = 1 - |sum of corresponding originals - sum of neighbors| /
///         sum |corresponding original - neighbor mean|.
/// Raw value (may be negative); invalid when the denominator vanishes.
ElementScore skeletal_point_centeredness(std::size_t index, const SkeletalPointSet& skeletal,
                                         const PointCloud& original, int k);

std::vector<ElementScore> score_skeletal_centeredness(const SkeletalPointSet& skeletal,
                                                      const PointCloud& original,
                                                      const CenterednessOptions& options = {});

/// Unit direction of the curve at parameter t of an edge. Interior
/// parameters use the edge direction (second - first). At a vertex of
/// degree 2 the direction is the tangent of the circumcircle through the
/// vertex and its two path neighbors, signed to point forward along the
/// path; at vertices of other degrees it falls back to the incident edge
/// direction. Throws on a zero-length edge.
Vec3 curve_direction_at(const CurveSkeleton& skeleton, std::size_t edge, double t);
Vec3 curve_direction_at(const CurveSkeleton& skeleton, std::size_t edge, double t,
                        const std::vector<std::vector<std::size_t>>& adjacency);

/// Slab width eps_p = alpha * (shortest positive edge length).
double cutting_plane_interval(const CurveSkeleton& skeleton, double alpha);

/// Original-cloud points between the two cutting planes:
/// { q : |(q - p_g) . u| <= eps_p / 2 }.
std::vector<std::size_t> associated_points(const PointCloud& original, const Vec3& p_g,
                                           const Vec3& direction, double eps_p);

/// Cross-section of the shape at a curve sample: slab points projected into
/// the plane orthogonal to the curve direction, with the fitted center.
/// Projected coordinates are relative to the sample, so the sample itself
/// projects to the origin.
struct CrossSection {
    Vec3 sample = Vec3::Zero();
    Vec3 direction = Vec3::Zero();
    double slab_width = 0.0;
    std::vector<std::size_t> associated;
    Vec3 basis_g = Vec3::Zero(), basis_h = Vec3::Zero();
    std::vector<Vec2> projected;
    Vec2 fitted_center = Vec2::Zero();
    double semi_major = 0.0, semi_minor = 0.0;
    bool fit_valid = false;
    bool circle_fallback = false;
};

/// Deterministic orthonormal basis of the plane orthogonal to `direction`:
/// Gram-Schmidt on the world axis least aligned with it, then the cross
/// product.
void orthonormal_basis(const Vec3& direction, Vec3& g, Vec3& h);

CrossSection build_cross_section(const PointCloud& original, const Vec3& sample,
                                 const Vec3& direction, double eps_p);

/// Curve-point centeredness from a fitted cross-section:
/// max(0, 1 - |projected sample - fitted center| / (0.5 (l_a + l_b))).
double curve_point_centeredness(const CrossSection& section);

/// Scores every curve sample; samples coinciding with a joint vertex
/// (within joint_tolerance x bbox_diagonal), with fewer than 3 associated
/// points, or with an unfittable section are invalid.
std::vector<ElementScore> score_curve_centeredness(const CurveSkeleton& skeleton,
                                                   const std::vector<CurveSample>& samples,
                                                   const PointCloud& original,
                                                   const CenterednessOptions& options,
                                                   double bbox_diagonal);

/// Sectional centeredness of a thin, line-like skeletal point set: the
/// curve rule applied with PCA tangents as directions and
/// eps_p = alpha * median nearest-neighbor spacing. Optional mode; the
/// references leave its accuracy unspecified.
std::vector<ElementScore> score_skeletal_centeredness_sectional(
    const SkeletalPointSet& skeletal, const PointCloud& original,
    const CenterednessOptions& options = {});

struct OverallCenteredness {
    double ratio = 0.0;
    std::size_t centered = 0;
    std::size_t accounted = 0;
    bool valid = false;
};

/// Ratio of valid elements with score strictly above the threshold.
OverallCenteredness overall_centeredness(const std::vector<ElementScore>& scores,
                                         double threshold);

}  // namespace skelscore
