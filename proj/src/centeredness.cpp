#include "skelscore/centeredness.hpp"

#include "skelscore/ellipse_fit.hpp"
#include "skelscore/kdtree.hpp"
#include "skelscore/smoothness.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace skelscore {

namespace {

ElementScore skeletal_point_centeredness_impl(std::size_t index, const SkeletalPointSet& skeletal,
                                              const PointCloud& original, int k,
                                              const KdTree3& tree) {
    ElementScore score;
    score.element = index;

    const auto neighbors = tree.k_nearest(skeletal.points[index], static_cast<std::size_t>(k),
                                          index);
    if (neighbors.size() < 2) {
        score.valid = false;
        score.reason = invalid_reason::too_few_neighbors;
        return score;
    }

    Vec3 sum_original = Vec3::Zero();
    Vec3 sum_skeletal = Vec3::Zero();
    for (const auto& hit : neighbors) {
        sum_original += original[skeletal.corresponding(hit.index)];
        sum_skeletal += skeletal.points[hit.index];
    }
    const Vec3 neighbor_mean = sum_skeletal / static_cast<double>(neighbors.size());

    double denominator = 0.0;
    for (const auto& hit : neighbors)
        denominator += (original[skeletal.corresponding(hit.index)] - neighbor_mean).norm();
    if (denominator < 1e-12) {
        score.valid = false;
        score.reason = invalid_reason::degenerate_neighborhood;
        return score;
    }
    score.value = 1.0 - (sum_original - sum_skeletal).norm() / denominator;
    return score;
}

}  // namespace

ElementScore skeletal_point_centeredness(std::size_t index, const SkeletalPointSet& skeletal,
                                         const PointCloud& original, int k) {
    if (k < 2) throw std::invalid_argument("skeletal_point_centeredness: require k >= 2");
    skeletal.validate_against(original);
    KdTree3 tree(skeletal.points);
    return skeletal_point_centeredness_impl(index, skeletal, original, k, tree);
}

std::vector<ElementScore> score_skeletal_centeredness(const SkeletalPointSet& skeletal,
                                                      const PointCloud& original,
                                                      const CenterednessOptions& options) {
    if (options.k < 2) throw std::invalid_argument("score_skeletal_centeredness: require k >= 2");
    skeletal.validate_against(original);
    KdTree3 tree(skeletal.points);
    std::vector<ElementScore> scores(skeletal.size());

    const long long n = static_cast<long long>(skeletal.size());
    const int threads = effective_threads();
    const bool parallel = options.exec == Execution::Parallel && threads > 1 && n > 1;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(threads) if (parallel)
#endif
    for (long long i = 0; i < n; ++i)
        scores[i] = skeletal_point_centeredness_impl(static_cast<std::size_t>(i), skeletal,
                                                     original, options.k, tree);
    return scores;
}

namespace {

// Tangent of the circumcircle through (a, b, c) at b, signed to have a
// positive dot product with (c - a). Collinear points degenerate to the
// chord direction.
Vec3 circumcircle_tangent(const Vec3& a, const Vec3& b, const Vec3& c) {
    const Vec3 chord = c - a;
    const Vec3 ba = a - b, bc = c - b;
    const Vec3 normal = ba.cross(bc);
    const double chord_len = chord.norm();
    if (normal.norm() <= 1e-12 * ba.norm() * bc.norm()) {
        if (chord_len <= 0.0) return (b - a).normalized();  // a == c: fold-back
        return chord / chord_len;
    }
    const Vec3 u = b - a, v = c - a;
    const Vec3 w = u.cross(v);
    const Vec3 center =
        a + (v.squaredNorm() * w.cross(u) + u.squaredNorm() * v.cross(w)) / (2.0 * w.squaredNorm());
    Vec3 tangent = normal.cross(b - center).normalized();
    if (tangent.dot(chord) < 0.0) tangent = -tangent;
    return tangent;
}

}  // namespace

Vec3 curve_direction_at(const CurveSkeleton& skeleton, std::size_t edge, double t) {
    return curve_direction_at(skeleton, edge, t, skeleton.adjacency());
}

Vec3 curve_direction_at(const CurveSkeleton& skeleton, std::size_t edge, double t,
                        const std::vector<std::vector<std::size_t>>& adjacency) {
    if (t < 0.0 || t > 1.0) throw std::invalid_argument("curve_direction_at: t outside [0, 1]");
    const auto [first, second] = skeleton.edges[edge];
    const Vec3 along = skeleton.vertices[second] - skeleton.vertices[first];
    const double length = along.norm();
    if (length <= 0.0) throw std::invalid_argument("curve_direction_at: zero-length edge");
    const Vec3 forward = along / length;

    constexpr double kEnd = 1e-12;
    const bool at_second = t >= 1.0 - kEnd;
    const bool at_first = t <= kEnd;
    if (!at_first && !at_second) return forward;

    const std::size_t vertex = at_second ? second : first;
    const std::size_t before = at_second ? first : second;
    if (adjacency[vertex].size() != 2) return forward;  // endpoint or joint: edge direction

    const auto& e0 = skeleton.edges[adjacency[vertex][0]];
    const auto& e1 = skeleton.edges[adjacency[vertex][1]];
    const std::size_t n0 = e0.first == vertex ? e0.second : e0.first;
    const std::size_t n1 = e1.first == vertex ? e1.second : e1.first;
    const std::size_t after = n0 == before ? n1 : n0;

    // Order the triple so the sign convention (positive dot with the chord)
    // faces forward along the queried edge: at t = 1 the path runs
    // first -> vertex -> after, at t = 0 it runs after -> vertex -> second.
    const std::size_t path_in = at_second ? before : after;
    const std::size_t path_out = at_second ? after : before;
    return circumcircle_tangent(skeleton.vertices[path_in], skeleton.vertices[vertex],
                                skeleton.vertices[path_out]);
}

double cutting_plane_interval(const CurveSkeleton& skeleton, double alpha) {
    if (!(alpha > 0.0) || alpha >= 1.0)
        throw std::invalid_argument("cutting_plane_interval: require alpha in (0, 1)");
    double shortest = std::numeric_limits<double>::infinity();
    for (std::size_t e = 0; e < skeleton.edge_count(); ++e) {
        const double length = skeleton.edge_length(e);
        if (length > 0.0) shortest = std::min(shortest, length);
    }
    if (!std::isfinite(shortest))
        throw std::invalid_argument("cutting_plane_interval: no positive-length edge");
    return alpha * shortest;
}

std::vector<std::size_t> associated_points(const PointCloud& original, const Vec3& p_g,
                                           const Vec3& direction, double eps_p) {
    std::vector<std::size_t> indices;
    const double half = 0.5 * eps_p;
    for (std::size_t i = 0; i < original.size(); ++i)
        if (std::abs((original[i] - p_g).dot(direction)) <= half) indices.push_back(i);
    return indices;
}

void orthonormal_basis(const Vec3& direction, Vec3& g, Vec3& h) {
    int least = 0;
    double best = std::abs(direction.x());
    if (std::abs(direction.y()) < best) {
        least = 1;
        best = std::abs(direction.y());
    }
    if (std::abs(direction.z()) < best) least = 2;
    Vec3 axis = Vec3::Zero();
    axis[least] = 1.0;
    g = (axis - axis.dot(direction) * direction).normalized();
    h = direction.cross(g);
}

CrossSection build_cross_section(const PointCloud& original, const Vec3& sample,
                                 const Vec3& direction, double eps_p) {
    CrossSection section;
    section.sample = sample;
    section.direction = direction;
    section.slab_width = eps_p;
    section.associated = associated_points(original, sample, direction, eps_p);
    orthonormal_basis(direction, section.basis_g, section.basis_h);

    section.projected.reserve(section.associated.size());
    for (std::size_t idx : section.associated) {
        const Vec3 d = original[idx] - sample;
        section.projected.push_back({d.dot(section.basis_g), d.dot(section.basis_h)});
    }
    if (section.projected.size() < 3) return section;  // fit_valid stays false
    try {
        const EllipseFit fit = fit_ellipse(section.projected);
        section.fitted_center = fit.center;
        section.semi_major = fit.semi_major;
        section.semi_minor = fit.semi_minor;
        section.circle_fallback = fit.circle_fallback;
        section.fit_valid = true;
    } catch (const std::exception&) {
        section.fit_valid = false;
    }
    return section;
}

double curve_point_centeredness(const CrossSection& section) {
    if (!section.fit_valid)
        throw std::invalid_argument("curve_point_centeredness: invalid cross-section fit");
    const double mean_axis = 0.5 * (section.semi_major + section.semi_minor);
    return std::max(0.0, 1.0 - section.fitted_center.norm() / mean_axis);
}

std::vector<ElementScore> score_curve_centeredness(const CurveSkeleton& skeleton,
                                                   const std::vector<CurveSample>& samples,
                                                   const PointCloud& original,
                                                   const CenterednessOptions& options,
                                                   double bbox_diagonal) {
    const double eps_p = cutting_plane_interval(skeleton, options.alpha);
    const auto adjacency = skeleton.adjacency();
    const double joint_tol = options.joint_tolerance * bbox_diagonal;

    std::vector<Vec3> joints;
    for (std::size_t v = 0; v < skeleton.vertex_count(); ++v)
        if (adjacency[v].size() > 2) joints.push_back(skeleton.vertices[v]);

    std::vector<ElementScore> scores(samples.size());
    const long long n = static_cast<long long>(samples.size());
    const int threads = effective_threads();
    const bool parallel = options.exec == Execution::Parallel && threads > 1 && n > 1;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8) num_threads(threads) if (parallel)
#endif
    for (long long i = 0; i < n; ++i) {
        const CurveSample& sample = samples[i];
        ElementScore& score = scores[i];
        score.element = static_cast<std::size_t>(i);

        bool on_joint = false;
        for (const Vec3& joint : joints)
            if ((sample.position - joint).norm() <= joint_tol) on_joint = true;
        if (on_joint) {
            score.valid = false;
            score.reason = invalid_reason::joint_vertex;
            continue;
        }

        Vec3 direction;
        try {
            direction = curve_direction_at(skeleton, sample.edge, sample.t, adjacency);
        } catch (const std::exception&) {
            score.valid = false;
            score.reason = invalid_reason::zero_length_edge;
            continue;
        }

        const CrossSection section = build_cross_section(original, sample.position, direction,
                                                         eps_p);
        if (section.associated.size() < 3) {
            score.valid = false;
            score.reason = invalid_reason::few_associated;
            continue;
        }
        if (!section.fit_valid) {
            score.valid = false;
            score.reason = invalid_reason::unfittable;
            continue;
        }
        score.value = curve_point_centeredness(section);
    }
    return scores;
}

std::vector<ElementScore> score_skeletal_centeredness_sectional(
    const SkeletalPointSet& skeletal, const PointCloud& original,
    const CenterednessOptions& options) {
    skeletal.validate_against(original);
    if (skeletal.size() < 2)
        throw std::invalid_argument("sectional centeredness: need at least 2 skeletal points");

    // the slab has to catch a cross-section ring of the original sampling,
    // so its width follows the original cloud's spacing, not the contracted
    // set's (which collapses toward zero for a thin skeletal set)
    KdTree3 tree(original.points);
    std::vector<double> spacing(original.size());
    for (std::size_t i = 0; i < original.size(); ++i)
        spacing[i] = std::sqrt(tree.nearest(original[i], i).dist2);
    std::nth_element(spacing.begin(), spacing.begin() + spacing.size() / 2, spacing.end());
    const double eps_p = 4.0 * options.alpha * spacing[spacing.size() / 2];

    const TangentField field = compute_tangent_field(skeletal.points, options.k, options.exec);

    std::vector<ElementScore> scores(skeletal.size());
    const long long n = static_cast<long long>(skeletal.size());
    const int threads = effective_threads();
    const bool parallel = options.exec == Execution::Parallel && threads > 1 && n > 1;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8) num_threads(threads) if (parallel)
#endif
    for (long long i = 0; i < n; ++i) {
        ElementScore& score = scores[i];
        score.element = static_cast<std::size_t>(i);
        if (!field.valid[i]) {
            score.valid = false;
            score.reason = invalid_reason::degenerate_tangent;
            continue;
        }
        const CrossSection section =
            build_cross_section(original, skeletal.points[i], field.tangents[i], eps_p);
        if (section.associated.size() < 3) {
            score.valid = false;
            score.reason = invalid_reason::few_associated;
            continue;
        }
        if (!section.fit_valid) {
            score.valid = false;
            score.reason = invalid_reason::unfittable;
            continue;
        }
        score.value = curve_point_centeredness(section);
    }
    return scores;
}

OverallCenteredness overall_centeredness(const std::vector<ElementScore>& scores,
                                         double threshold) {
    if (!(threshold > 0.0) || threshold > 1.0)
        throw std::invalid_argument("overall_centeredness: require threshold in (0, 1]");
    OverallCenteredness overall;
    for (const ElementScore& score : scores) {
        if (!score.valid) continue;
        ++overall.accounted;
        if (score.value > threshold) ++overall.centered;  // strict, per definition
    }
    overall.valid = overall.accounted > 0;
    overall.ratio = overall.valid ? static_cast<double>(overall.centered) /
                                        static_cast<double>(overall.accounted)
                                  : 0.0;
    return overall;
}

}  // namespace skelscore
