#include "skelscore/boundedness.hpp"

#include "skelscore/delaunay2d.hpp"
#include "skelscore/kdtree.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace skelscore {

std::vector<Vec3> project_to_unit_sphere(const Vec3& x, const PointCloud& cloud) {
    std::vector<Vec3> directions;
    directions.reserve(cloud.size());
    for (const Vec3& p : cloud.points) {
        const Vec3 d = p - x;
        const double len = d.norm();
        if (len <= 1e-12) continue;  // coincident point: skipped, not fatal
        directions.push_back(d / len);
    }
    if (directions.empty())
        throw std::invalid_argument("project_to_unit_sphere: degenerate query");
    return directions;
}

Vec2 sinusoidal_project(const Vec3& u) {
    const double longitude = std::atan2(u.y(), u.x());
    const double latitude = std::atan2(u.z(), std::sqrt(u.x() * u.x() + u.y() * u.y()));
    return {std::cos(latitude) * longitude, latitude};
}

double SphereCoverage::beta() const {
    return std::clamp(area / (4.0 * M_PI), 0.0, 1.0);
}

namespace {


// l'Huilier's theorem: spherical excess from the three angular side lengths.
double spherical_triangle_area(double a, double b, double c) {
    const double s = 0.5 * (a + b + c);
    const double product = std::tan(0.5 * s) * std::tan(0.5 * (s - a)) *
                           std::tan(0.5 * (s - b)) * std::tan(0.5 * (s - c));
    if (!(product > 0.0)) return 0.0;
    return 4.0 * std::atan(std::sqrt(product));
}

void angular_nn_spacing(const std::vector<Vec3>& directions, const KdTree3& tree,
                        std::vector<double>& spacing) {
    spacing.resize(directions.size());
    for (std::size_t i = 0; i < directions.size(); ++i) {
        const auto hit = tree.nearest(directions[i], i);
        const double chord = std::sqrt(hit.dist2);
        spacing[i] = 2.0 * std::asin(std::clamp(0.5 * chord, 0.0, 1.0));
    }
}

// chord length subtending a central angle, saturating at the diameter
double chord_of_angle(double angle) {
    return angle >= M_PI ? 2.0 : 2.0 * std::sin(0.5 * angle);
}

Vec3 inverse_sinusoidal(const Vec2& p) {
    const double latitude = std::clamp(p.y(), -M_PI / 2.0, M_PI / 2.0);
    const double cos_lat = std::cos(latitude);
    double longitude = cos_lat > 1e-12 ? p.x() / cos_lat : 0.0;
    longitude = std::remainder(longitude, 2.0 * M_PI);
    return {cos_lat * std::cos(longitude), cos_lat * std::sin(longitude), std::sin(latitude)};
}

std::uint64_t triangle_key(int a, int b, int c) {
    int v[3] = {a, b, c};
    std::sort(v, v + 3);
    return (static_cast<std::uint64_t>(v[0]) << 42) | (static_cast<std::uint64_t>(v[1]) << 21) |
           static_cast<std::uint64_t>(v[2]);
}

}  // namespace

SphereCoverage covered_area(const std::vector<Vec3>& directions, double prune_factor,
                            bool keep_triangles) {
    SphereCoverage coverage;
    if (directions.size() < 3) return coverage;

    // directions confined to one plane through the origin (a great circle,
    // or a single line) enclose zero area on the sphere
    {
        Eigen::Matrix3d moment = Eigen::Matrix3d::Zero();
        for (const Vec3& u : directions) moment += u * u.transpose();
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(moment);
        if (solver.eigenvalues()(0) <= 1e-12 * solver.eigenvalues()(2)) return coverage;
    }

    thread_local std::vector<double> spacing, sorted;
    thread_local std::vector<Vec3> frame_dirs;
    thread_local std::vector<Vec2> planar;
    thread_local std::vector<int> source;
    thread_local std::vector<char> seam_member;
    thread_local std::unordered_set<std::uint64_t> seen;

    // The projection tears the sphere at the seam and distorts around the
    // poles. A sparse direction cluster suffers most from both, while a
    // polar fan still closes over the pole once its points connect across
    // longitudes, so aim the pole at the sparsest direction. Chord distances
    // are rotation-invariant, which keeps the per-point spacing frame-free.
    {
        KdTree3 world_tree(directions);
        angular_nn_spacing(directions, world_tree, spacing);
    }
    sorted = spacing;
    std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
    coverage.median_spacing = sorted[sorted.size() / 2];

    std::size_t sparsest = 0;
    for (std::size_t i = 1; i < spacing.size(); ++i)
        if (spacing[i] > spacing[sparsest]) sparsest = i;
    const Eigen::Quaterniond frame =
        Eigen::Quaterniond::FromTwoVectors(directions[sparsest], Vec3(0, 0, 1));
    frame_dirs.resize(directions.size());
    for (std::size_t i = 0; i < directions.size(); ++i)
        frame_dirs[i] = frame * directions[i];

    KdTree3 tree(frame_dirs);

    // Sinusoidal projection, with directions near the longitude +-pi seam
    // duplicated on the opposite side so the tear does not open false holes.
    // The duplication band follows the local spacing: sparse regions need a
    // proportionally wider bridge across the seam.
    planar.clear();
    source.clear();
    seam_member.clear();
    planar.reserve(frame_dirs.size() * 2);
    source.reserve(frame_dirs.size() * 2);
    for (std::size_t i = 0; i < frame_dirs.size(); ++i) {
        const Vec3& u = frame_dirs[i];
        const double longitude = std::atan2(u.y(), u.x());
        const double latitude = std::atan2(u.z(), std::hypot(u.x(), u.y()));
        const double cos_lat = std::cos(latitude);
        planar.push_back({cos_lat * longitude, latitude});
        source.push_back(static_cast<int>(i));
        const double seam_distance = cos_lat * (M_PI - std::abs(longitude));
        const bool duplicated =
            seam_distance <= std::max(coverage.median_spacing, spacing[i]);
        seam_member.push_back(duplicated ? 1 : 0);
        if (duplicated) {
            const double wrapped = longitude >= 0.0 ? longitude - 2.0 * M_PI
                                                    : longitude + 2.0 * M_PI;
            planar.push_back({cos_lat * wrapped, latitude});
            source.push_back(static_cast<int>(i));
            seam_member.push_back(1);
        }
    }

    const auto triangles = delaunay_triangulate(planar);

    // Pruning separates genuine coverage holes from projection distortion.
    // A triangle short relative to its corners' own nearest-neighbor spacing
    // is kept outright; a long one survives only when the interior of its
    // planar footprint (centroid and edge midpoints, mapped back through the
    // projection) stays within the same angular radius of some projected
    // direction, i.e. it does not span a void. Comparisons run on chord
    // lengths (monotone in the central angle on [0, pi]).
    seen.clear();
    for (const auto& tri : triangles) {
        const int a = source[tri[0]], b = source[tri[1]], c = source[tri[2]];
        if (a == b || b == c || a == c) continue;  // a point paired with its seam copy
        // only triangles touching the seam band can repeat across the tear
        if ((seam_member[tri[0]] || seam_member[tri[1]] || seam_member[tri[2]]) &&
            !seen.insert(triangle_key(a, b, c)).second)
            continue;
        const double chord2_ab = (frame_dirs[a] - frame_dirs[b]).squaredNorm();
        const double chord2_bc = (frame_dirs[b] - frame_dirs[c]).squaredNorm();
        const double chord2_ca = (frame_dirs[c] - frame_dirs[a]).squaredNorm();
        const double radius = prune_factor * std::max({spacing[a], spacing[b], spacing[c]});
        const double chord_limit = chord_of_angle(radius);
        const double chord2_limit = chord_limit * chord_limit;
        if (std::max({chord2_ab, chord2_bc, chord2_ca}) > chord2_limit) {
            const Vec2& pa = planar[tri[0]];
            const Vec2& pb = planar[tri[1]];
            const Vec2& pc = planar[tri[2]];
            const Vec2 probes[4] = {(pa + pb + pc) / 3.0, 0.5 * (pa + pb), 0.5 * (pb + pc),
                                    0.5 * (pc + pa)};
            bool supported = true;
            for (const Vec2& probe : probes) {
                const Vec3 probe_dir = inverse_sinusoidal(probe);
                // a probe within the radius of one of its own corners needs
                // no tree lookup
                const double corner2 = std::min({(probe_dir - frame_dirs[a]).squaredNorm(),
                                                 (probe_dir - frame_dirs[b]).squaredNorm(),
                                                 (probe_dir - frame_dirs[c]).squaredNorm()});
                if (corner2 <= chord2_limit) continue;
                if (tree.nearest(probe_dir).dist2 > chord2_limit) {
                    supported = false;
                    break;
                }
            }
            if (!supported) {
                ++coverage.pruned;
                continue;
            }
        }
        const double ab = 2.0 * std::asin(std::clamp(0.5 * std::sqrt(chord2_ab), 0.0, 1.0));
        const double bc = 2.0 * std::asin(std::clamp(0.5 * std::sqrt(chord2_bc), 0.0, 1.0));
        const double ca = 2.0 * std::asin(std::clamp(0.5 * std::sqrt(chord2_ca), 0.0, 1.0));
        coverage.area += spherical_triangle_area(ab, bc, ca);
        ++coverage.kept;
        if (keep_triangles) coverage.triangles.push_back({a, b, c});
    }
    coverage.area = std::clamp(coverage.area, 0.0, 4.0 * M_PI);
    return coverage;
}

double boundedness_score(const Vec3& x, const PointCloud& cloud, double prune_factor) {
    const auto directions = project_to_unit_sphere(x, cloud);
    return covered_area(directions, prune_factor).beta();
}

bool is_bounded(double beta, double beta_star, bool geq) {
    if (!(beta_star > 0.0) || beta_star > 1.0)
        throw std::invalid_argument("is_bounded: require 0 < beta* <= 1");
    return geq ? beta >= beta_star : beta < beta_star;
}

std::vector<CurveSample> sample_curve_points(const CurveSkeleton& skeleton,
                                             std::size_t n_target) {
    if (skeleton.edge_count() == 0)
        throw std::invalid_argument("sample_curve_points: skeleton has no edges");
    if (n_target < 2)
        throw std::invalid_argument("sample_curve_points: need n_target >= 2");

    const double total = skeleton.total_length();
    std::vector<CurveSample> samples;
    samples.reserve(n_target + 2 * skeleton.edge_count());
    for (std::size_t e = 0; e < skeleton.edge_count(); ++e) {
        const Vec3& first = skeleton.vertices[skeleton.edges[e].first];
        const Vec3& second = skeleton.vertices[skeleton.edges[e].second];
        const double length = (second - first).norm();
        if (length <= 0.0) {
            samples.push_back({e, 0.5, first});
            continue;
        }
        const double share = total > 0.0 ? static_cast<double>(n_target) * length / total : 2.0;
        const std::size_t count = std::max<std::size_t>(2, static_cast<std::size_t>(std::llround(share)));
        for (std::size_t i = 0; i < count; ++i) {
            const double t = static_cast<double>(i) / static_cast<double>(count - 1);
            samples.push_back({e, t, (1.0 - t) * first + t * second});
        }
    }
    return samples;
}

namespace {

OverallBoundedness score_queries(const std::vector<Vec3>& queries, const PointCloud& original,
                                 const BoundednessOptions& options) {
    OverallBoundedness overall;
    overall.elements.resize(queries.size());

    const long long n = static_cast<long long>(queries.size());
    const int threads = effective_threads();
    const bool parallel = options.exec == Execution::Parallel && threads > 1 && n > 1;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 4) num_threads(threads) if (parallel)
#endif
    for (long long i = 0; i < n; ++i) {
        ElementScore& score = overall.elements[i];
        score.element = static_cast<std::size_t>(i);
        try {
            score.value = boundedness_score(queries[i], original, options.prune_factor);
        } catch (const std::exception&) {
            score.valid = false;
            score.reason = invalid_reason::degenerate_query;
        }
    }

    for (const ElementScore& score : overall.elements) {
        if (!score.valid) continue;
        ++overall.accounted;
        if (is_bounded(score.value, options.beta_star, options.bounded_if_geq)) ++overall.bounded;
    }
    overall.valid = overall.accounted > 0;
    overall.ratio = overall.valid
                        ? static_cast<double>(overall.bounded) / static_cast<double>(overall.accounted)
                        : 0.0;
    return overall;
}

}  // namespace

OverallBoundedness overall_boundedness_points(const SkeletalPointSet& skeletal,
                                              const PointCloud& original,
                                              const BoundednessOptions& options) {
    if (skeletal.points.empty())
        throw std::invalid_argument("overall_boundedness_points: empty skeletal set");
    validate_cloud(original, "original cloud");
    return score_queries(skeletal.points, original, options);
}

OverallBoundedness overall_boundedness_curve(const CurveSkeleton& skeleton,
                                             const PointCloud& original, std::size_t n_sp,
                                             const BoundednessOptions& options) {
    validate_cloud(original, "original cloud");
    const auto samples = sample_curve_points(skeleton, n_sp);
    std::vector<Vec3> queries;
    queries.reserve(samples.size());
    for (const CurveSample& s : samples) queries.push_back(s.position);
    return score_queries(queries, original, options);
}

}  // namespace skelscore
