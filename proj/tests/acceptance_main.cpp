// Acceptance suite: end-to-end checks of the scoring pipeline against
// independent oracles, analytic fixtures, and invariance/performance
// budgets. Prints one PASS/FAIL line per criterion; exit code is the
// number of failed criteria.

#include "skelscore/barcode_distance.hpp"
#include "skelscore/degrade.hpp"
#include "skelscore/evaluate.hpp"
#include "skelscore/oracles.hpp"
#include "skelscore/report.hpp"
#include "skelscore/rng.hpp"
#include "skelscore/smoothness.hpp"
#include "skelscore/synthetic.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace skelscore;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;
std::vector<std::string> notes;

void report_criterion(int number, const char* title, bool passed) {
    std::printf("[%s] criterion %2d: %s\n", passed ? "PASS" : "FAIL", number, title);
    if (!passed) ++failures;
    std::fflush(stdout);
}

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

PointCloud random_cloud(Rng& rng, std::size_t n, double extent = 1.0) {
    PointCloud cloud;
    cloud.points.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        cloud.points.push_back({rng.uniform(-extent, extent), rng.uniform(-extent, extent),
                                rng.uniform(-extent, extent)});
    return cloud;
}

std::vector<std::pair<double, double>> sorted_intervals(const PersistenceBarcode& barcode) {
    std::vector<std::pair<double, double>> intervals;
    for (const auto& bar : barcode.bars) intervals.push_back({bar.birth, bar.death});
    std::sort(intervals.begin(), intervals.end());
    return intervals;
}

PersistenceBarcode random_barcode(Rng& rng, std::size_t bars, bool zero_birth) {
    PersistenceBarcode barcode;
    for (std::size_t i = 0; i < bars; ++i) {
        const double birth = zero_birth ? 0.0 : rng.uniform(0.0, 1.0);
        barcode.bars.push_back({birth, birth + rng.uniform(0.0, 1.5), false});
    }
    return barcode;
}

// --- criterion 1: H0 barcodes match the boundary-matrix reduction ---------

bool criterion_h0_oracle() {
    const auto start = Clock::now();
    Rng rng(1001);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 5 + static_cast<std::size_t>(rng.uniform() * 21.0);  // [5, 25]
        const PointCloud cloud = random_cloud(rng, n);
        const double eps_max = rng.uniform(0.5, 3.0);
        const auto fast = sorted_intervals(h0_barcode(cloud, eps_max));
        const auto slow = sorted_intervals(oracle::oracle_h0_persistence(cloud, eps_max));
        if (fast.size() != slow.size()) return false;
        for (std::size_t i = 0; i < fast.size(); ++i) {
            if (std::abs(fast[i].first - slow[i].first) > 1e-12) return false;
            if (std::abs(fast[i].second - slow[i].second) > 1e-12) return false;
        }
    }
    return seconds_since(start) < 10.0;
}

// --- criterion 2: matching distances match exhaustive enumeration ---------

bool criterion_distance_oracle() {
    Rng rng(2002);
    for (int trial = 0; trial < 500; ++trial) {
        const bool zero_birth = rng.uniform() < 0.5;
        const auto a = random_barcode(rng, static_cast<std::size_t>(rng.uniform() * 6.0),
                                      zero_birth);
        const auto b = random_barcode(rng, static_cast<std::size_t>(rng.uniform() * 6.0),
                                      zero_birth);
        if (std::abs(bottleneck_distance(a, b) - oracle::oracle_bottleneck(a, b)) > 1e-12)
            return false;
        for (int p : {1, 2})
            if (std::abs(wasserstein_distance(a, b, p) -
                         oracle::oracle_matching_distance(a, b, p)) > 1e-12)
                return false;
    }
    return true;
}

// --- criterion 3: metric axioms -------------------------------------------

bool criterion_metric_axioms() {
    Rng rng(3003);
    for (int trial = 0; trial < 200; ++trial) {
        // equal cardinality: the count normalization of the Wasserstein
        // distance is a metric only within a fixed bar count
        const std::size_t bars = 1 + static_cast<std::size_t>(rng.uniform() * 8.0);
        const bool zero_birth = rng.uniform() < 0.5;
        const auto a = random_barcode(rng, bars, zero_birth);
        const auto b = random_barcode(rng, bars, zero_birth);
        const auto c = random_barcode(rng, bars, zero_birth);

        if (bottleneck_distance(a, a) > 1e-9) return false;
        if (wasserstein_distance(a, a, 1) > 1e-9) return false;
        const double b_ab = bottleneck_distance(a, b);
        const double b_ba = bottleneck_distance(b, a);
        const double w_ab = wasserstein_distance(a, b, 1);
        const double w_ba = wasserstein_distance(b, a, 1);
        if (std::abs(b_ab - b_ba) > 1e-9 || std::abs(w_ab - w_ba) > 1e-9) return false;
        if (b_ab > bottleneck_distance(a, c) + bottleneck_distance(c, b) + 1e-9) return false;
        if (w_ab > wasserstein_distance(a, c, 1) + wasserstein_distance(c, b, 1) + 1e-9)
            return false;

        // mixed cardinality: the bottleneck distance stays a metric; for the
        // Wasserstein distance the un-normalized matching cost does
        const auto mixed =
            random_barcode(rng, static_cast<std::size_t>(rng.uniform() * 8.0), zero_birth);
        const double via = bottleneck_distance(a, mixed) + bottleneck_distance(mixed, b);
        if (b_ab > via + 1e-9) return false;
        auto cost = [](const PersistenceBarcode& x, const PersistenceBarcode& y) {
            return wasserstein_distance(x, y, 1) *
                   static_cast<double>(std::max(x.size(), y.size()));
        };
        if (cost(a, b) > cost(a, mixed) + cost(mixed, b) + 1e-9) return false;
    }
    return true;
}

// --- criterion 4: boundedness calibration ----------------------------------

bool criterion_boundedness_calibration() {
    const auto start = Clock::now();
    ShapeParams params;
    params.radius = 1.0;
    const auto sphere = generate(ShapeKind::Sphere, params, 4096, 0);

    const double center_beta = boundedness_score(Vec3::Zero(), sphere.cloud);
    if (center_beta < 0.99) return false;

    // analytic visible-cone fraction at distance 2R: (1 - cos 30deg)/2 = 0.0670
    const double outside_beta = boundedness_score(Vec3(0, 0, 2.0), sphere.cloud);
    if (outside_beta > 0.10 || outside_beta < 0.02) return false;

    // Querying within one sampling spacing of the surface is scale-ambiguous
    // (coverage jumps from ~0.5 to ~1 across that shell and the two
    // estimators resolve it differently), so random queries skip the shell.
    const double shell = 1.5 * nearest_neighbor_threshold(sphere.cloud);
    Rng rng(4004);
    int checked = 0;
    while (checked < 50) {
        const Vec3 query(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0),
                         rng.uniform(-2.0, 2.0));
        if (std::abs(query.norm() - params.radius) <= shell) continue;
        ++checked;
        const double beta = boundedness_score(query, sphere.cloud);
        const double reference = oracle::oracle_sphere_coverage(query, sphere.cloud, 128);
        if (std::abs(beta - reference) > 0.05) return false;
    }
    return seconds_since(start) < 30.0;
}

// --- criterion 5: centeredness calibration ---------------------------------

bool criterion_centeredness_calibration() {
    ShapeParams params;
    params.radius = 0.1;
    params.length = 1.0;
    const auto cylinder = generate(ShapeKind::Cylinder, params, 4096, 5);
    const double diagonal = bounding_box_diagonal(cylinder.cloud);
    const CenterednessOptions options;

    const auto interior_scores = [&](const CurveSkeleton& axis, double& mean) {
        const auto samples = sample_curve_points(axis, 128);
        const auto scores = score_curve_centeredness(axis, samples, cylinder.cloud, options,
                                                     diagonal);
        const double eps_p = cutting_plane_interval(axis, options.alpha);
        double sum = 0.0, minimum = 1.0;
        std::size_t count = 0;
        for (std::size_t i = 0; i < samples.size(); ++i) {
            if (!scores[i].valid) continue;
            if (0.5 * params.length - std::abs(samples[i].position.z()) <= eps_p) continue;
            sum += scores[i].value;
            minimum = std::min(minimum, scores[i].value);
            ++count;
        }
        mean = count ? sum / static_cast<double>(count) : 0.0;
        return std::pair<double, std::size_t>(minimum, count);
    };

    double mean = 0.0;
    const auto [minimum, count] = interior_scores(*cylinder.ground_truth, mean);
    if (count < 32 || minimum < 0.95) return false;

    const auto samples = sample_curve_points(*cylinder.ground_truth, 128);
    const auto scores = score_curve_centeredness(*cylinder.ground_truth, samples, cylinder.cloud,
                                                 options, diagonal);
    const auto overall = overall_centeredness(scores, 0.75);
    if (!overall.valid || overall.ratio < 0.9) return false;

    for (double delta : {0.2, 0.4, 0.6}) {
        CurveSkeleton offset = *cylinder.ground_truth;
        for (Vec3& v : offset.vertices) v.x() += delta * params.radius;
        double offset_mean = 0.0;
        const auto [offset_min, offset_count] = interior_scores(offset, offset_mean);
        (void)offset_min;
        if (offset_count < 32) return false;
        if (std::abs(offset_mean - (1.0 - delta)) > 0.1) return false;
    }
    return true;
}

// --- criterion 6: smoothness exactness -------------------------------------

bool criterion_smoothness_exactness() {
    CurveSkeleton straight;
    straight.vertices = {{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {3, 0, 0}};
    straight.edges = {{0, 1}, {1, 2}, {2, 3}};
    if (std::abs(overall_curve_smoothness(straight).value - 1.0) > 1e-12) return false;

    CurveSkeleton corner;
    corner.vertices = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}};
    corner.edges = {{0, 1}, {1, 2}};
    if (std::abs(overall_curve_smoothness(corner).value - 0.5) > 1e-9) return false;

    const double turns[4] = {0.0, 30.0, 60.0, 90.0};
    const double expected[4] = {1.0, 2.0 / 3.0, 1.0 / 3.0, 0.0};
    for (int i = 0; i < 4; ++i) {
        const double turn = turns[i] * M_PI / 180.0;
        CurveSkeleton bent;
        bent.vertices = {{0, 0, 0}, {1, 0, 0}, {1.0 + std::cos(turn), std::sin(turn), 0.0}};
        bent.edges = {{0, 1}, {1, 2}};
        const auto score = vertex_smoothness(bent, 1, bent.adjacency());
        if (!score.valid || std::abs(score.value - expected[i]) > 1e-12) return false;
    }
    return true;
}

// --- criterion 7: invariance suite ------------------------------------------

struct OverallScores {
    double bottleneck = 0, wasserstein = 0;
    double point_bounded = 0, point_centered = 0, point_smooth = 0;
    double curve_bounded = 0, curve_centered = 0, curve_smooth = 0;
};

OverallScores collect(const EvaluationReport& report) {
    OverallScores s;
    s.bottleneck = report.point_set->topology->bottleneck;
    s.wasserstein = report.point_set->topology->wasserstein;
    s.point_bounded = report.point_set->boundedness.overall;
    s.point_centered = report.point_set->centeredness.overall;
    s.point_smooth = report.point_set->smoothness.overall;
    s.curve_bounded = report.curve->boundedness.overall;
    s.curve_centered = report.curve->centeredness.overall;
    s.curve_smooth = report.curve->smoothness.overall;
    return s;
}

double max_delta(const OverallScores& a, const OverallScores& b) {
    return std::max({std::abs(a.bottleneck - b.bottleneck),
                     std::abs(a.wasserstein - b.wasserstein),
                     std::abs(a.point_bounded - b.point_bounded),
                     std::abs(a.point_centered - b.point_centered),
                     std::abs(a.point_smooth - b.point_smooth),
                     std::abs(a.curve_bounded - b.curve_bounded),
                     std::abs(a.curve_centered - b.curve_centered),
                     std::abs(a.curve_smooth - b.curve_smooth)});
}

bool criterion_invariance() {
    ShapeParams params;
    params.radius = 0.1;
    params.length = 1.0;
    const auto cylinder = generate(ShapeKind::Cylinder, params, 1024, 7);

    // a contracted skeletal set keeps every query point strictly interior
    SkeletalPointSet contracted;
    contracted.points.reserve(cylinder.cloud.size());
    for (const Vec3& p : cylinder.cloud.points)
        contracted.points.push_back({0.3 * p.x(), 0.3 * p.y(), 0.92 * p.z()});

    EvaluationInput input;
    input.original = cylinder.cloud;
    input.skeletal = contracted;
    input.curve = cylinder.ground_truth;

    RunConfig config;
    config.n_sp = 96;
    const OverallScores base = collect(evaluate(input, config));

    auto transformed = [&](const Eigen::Matrix3d& rotation, const Vec3& translation) {
        EvaluationInput moved;
        moved.original.points.reserve(input.original.size());
        for (const Vec3& p : input.original.points)
            moved.original.points.push_back(rotation * p + translation);
        SkeletalPointSet moved_skeletal;
        for (const Vec3& p : input.skeletal->points)
            moved_skeletal.points.push_back(rotation * p + translation);
        moved.skeletal = std::move(moved_skeletal);
        CurveSkeleton moved_curve = *input.curve;
        for (Vec3& v : moved_curve.vertices) v = rotation * v + translation;
        moved.curve = std::move(moved_curve);
        return moved;
    };

    Rng rng(7007);

    // Rigid motions whose rotation permutes the coordinate axes keep the
    // axis-aligned bounding box, so the normalized configuration is an exact
    // rigid copy and every overall score must match.
    Eigen::Matrix3d cycle;           // (x, y, z) -> (y, z, x)
    cycle << 0, 0, 1, 1, 0, 0, 0, 1, 0;
    Eigen::Matrix3d quarter;         // 90-degree turn about z
    quarter << 0, -1, 0, 1, 0, 0, 0, 0, 1;
    for (const Eigen::Matrix3d& rotation : {cycle, quarter}) {
        const Vec3 translation(rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2));
        const OverallScores moved = collect(evaluate(transformed(rotation, translation), config));
        if (max_delta(base, moved) >= 1e-6) return false;
    }

    // General rotations change the axis-aligned diagonal, which rescales the
    // normalized frame: ratio and angle based scores must still match, and
    // the topological distances may move only with that scale change.
    for (int trial = 0; trial < 2; ++trial) {
        Eigen::Quaterniond q(rng.gaussian(), rng.gaussian(), rng.gaussian(), rng.gaussian());
        q.normalize();
        const Vec3 translation(rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2));
        const EvaluationInput moved_input = transformed(q.toRotationMatrix(), translation);
        const double diagonal_ratio = bounding_box_diagonal(moved_input.original) /
                                      bounding_box_diagonal(input.original);
        const OverallScores moved = collect(evaluate(moved_input, config));
        OverallScores ratio_only = moved;
        ratio_only.bottleneck = base.bottleneck;
        ratio_only.wasserstein = base.wasserstein;
        if (max_delta(base, ratio_only) >= 1e-6) return false;
        // the normalized frame shrinks by the diagonal ratio, so the
        // distances must track it exactly
        if (std::abs(moved.bottleneck * diagonal_ratio - base.bottleneck) >= 1e-6) return false;
        if (std::abs(moved.wasserstein * diagonal_ratio - base.wasserstein) >= 1e-6) return false;
    }

    // uniform scaling followed by renormalization leaves the topological
    // distances unchanged
    for (double scale : {0.25, 7.5}) {
        EvaluationInput scaled;
        for (const Vec3& p : input.original.points) scaled.original.points.push_back(scale * p);
        SkeletalPointSet scaled_skeletal;
        for (const Vec3& p : input.skeletal->points)
            scaled_skeletal.points.push_back(scale * p);
        scaled.skeletal = std::move(scaled_skeletal);
        scaled.curve = input.curve;
        const OverallScores result = collect(evaluate(scaled, config));
        if (std::abs(result.bottleneck - base.bottleneck) >= 1e-6) return false;
        if (std::abs(result.wasserstein - base.wasserstein) >= 1e-6) return false;
    }
    return true;
}

// --- criterion 8: degradation sensitivity trend -----------------------------

bool criterion_sensitivity_trend() {
    ShapeParams params;
    params.radius = 0.35;
    params.neck_radius = 0.12;
    params.length = 1.2;

    int noise_hits = 0, sparse_hits = 0;
    const int trials = 20;
    for (int trial = 0; trial < trials; ++trial) {
        const auto shape = generate(ShapeKind::Dumbbell, params, 4096,
                                    static_cast<std::uint64_t>(trial));
        auto [original, transform] = normalize_to_diagonal(shape.cloud, 1.6);

        TopologyOptions options;
        // baseline: the unperturbed skeletal set reproduces the cloud exactly
        const TopologyResult identity = topological_similarity(original, original, options);

        const PointCloud noisy =
            degrade_noise(original, 0.05, static_cast<std::uint64_t>(trial) + 991);
        const TopologyResult with_noise = topological_similarity(original, noisy, options);
        if (with_noise.bottleneck > identity.bottleneck &&
            with_noise.wasserstein > identity.wasserstein)
            ++noise_hits;

        const auto downsampled = degrade_downsample(original, 1024);
        const double eps_original = nearest_neighbor_threshold(original);
        const double eps_sparse = nearest_neighbor_threshold(downsampled.cloud);
        const TopologyResult with_sparse =
            topological_similarity(original, downsampled.cloud, options);
        if (eps_sparse > eps_original && (with_sparse.bottleneck > identity.bottleneck ||
                                          with_sparse.wasserstein > identity.wasserstein))
            ++sparse_hits;
    }
    return noise_hits >= 18 && sparse_hits >= 18;  // >= 90% of 20 trials
}

// --- criterion 9: identity skeleton sanity -----------------------------------

bool criterion_identity_sanity() {
    ShapeParams params;
    params.radius = 0.35;
    params.neck_radius = 0.12;
    params.length = 1.2;
    const auto shape = generate(ShapeKind::Dumbbell, params, 1024, 3);

    EvaluationInput input;
    input.original = shape.cloud;
    SkeletalPointSet identity;
    identity.points = shape.cloud.points;
    input.skeletal = std::move(identity);

    const EvaluationReport report = evaluate(input, RunConfig{});
    if (!report.point_set || !report.point_set->topology) return false;
    if (report.point_set->topology->bottleneck != 0.0) return false;
    if (report.point_set->topology->wasserstein != 0.0) return false;
    if (!report.point_set->boundedness.error.empty()) return false;
    if (!report.point_set->centeredness.error.empty()) return false;
    if (!report.point_set->smoothness.error.empty()) return false;
    if (report.point_set->boundedness.elements.size() != shape.cloud.size()) return false;
    if (report.point_set->centeredness.elements.size() != shape.cloud.size()) return false;
    if (report.point_set->smoothness.elements.size() != shape.cloud.size()) return false;
    // the untouched skeletal set is perfectly centered by construction
    return report.point_set->centeredness.overall_valid &&
           report.point_set->centeredness.overall == 1.0;
}

// --- criterion 10: performance envelope --------------------------------------

bool criterion_performance() {
    ShapeParams params;
    params.radius = 0.35;
    params.neck_radius = 0.12;
    params.length = 1.2;
    const auto shape = generate(ShapeKind::Dumbbell, params, 4096, 9);

    EvaluationInput input;
    input.original = shape.cloud;
    SkeletalPointSet identity;
    identity.points = shape.cloud.points;
    input.skeletal = std::move(identity);

    RunConfig config;
    config.threads = 1;  // single-threaded budget

    const auto start = Clock::now();
    const EvaluationReport report = evaluate(input, config);
    const double elapsed = seconds_since(start);
    set_requested_threads(0);

    std::ostringstream detail;
    detail << "    4096x4096 evaluation took " << elapsed << " s single-threaded";
    notes.push_back(detail.str());
    return report.point_set.has_value() && elapsed < 60.0;
}

// --- criterion 11: determinism ------------------------------------------------

std::string pipeline_json(std::uint64_t seed) {
    ShapeParams params;
    params.radius = 0.35;
    params.neck_radius = 0.12;
    params.length = 1.2;
    const auto shape = generate(ShapeKind::Dumbbell, params, 512, seed);

    RunConfig config;
    config.seed = seed;
    config.n_sp = 64;

    EvaluationInput input;
    input.original = shape.cloud;
    SkeletalPointSet skeletal;
    skeletal.points = degrade_noise(shape.cloud, 0.02, config.seed).points;
    input.skeletal = std::move(skeletal);
    input.curve = shape.ground_truth;

    return report_to_json(evaluate(input, config)).dump(2);
}

bool criterion_determinism() {
    const std::string first = pipeline_json(13);
    const std::string second = pipeline_json(13);
    if (first.empty() || first != second) return false;
    return pipeline_json(14) != first;  // a different seed changes the report
}

}  // namespace

int main() {
    report_criterion(1, "H0 barcodes match boundary-matrix reduction (200 clouds, 1e-12, <10 s)",
                     criterion_h0_oracle());
    report_criterion(2, "bottleneck/Wasserstein match exhaustive matching (500 pairs, 1e-12)",
                     criterion_distance_oracle());
    report_criterion(3, "distance axioms: identity, symmetry, triangle inequality (1e-9)",
                     criterion_metric_axioms());
    report_criterion(4, "boundedness calibration vs analytic cone and grid oracle (<30 s)",
                     criterion_boundedness_calibration());
    report_criterion(5, "centeredness calibration on the cylinder axis and radial offsets",
                     criterion_centeredness_calibration());
    report_criterion(6, "smoothness exactness: straight, right angle, turn-angle table",
                     criterion_smoothness_exactness());
    report_criterion(7, "rigid-motion and rescaling invariance of overall scores (<1e-6)",
                     criterion_invariance());
    report_criterion(8, "noise/sparsity strictly raise topological distances (>=90% of 20)",
                     criterion_sensitivity_trend());
    report_criterion(9, "identity skeleton: zero distances and a complete report",
                     criterion_identity_sanity());
    report_criterion(10, "full 4096-point evaluation under 60 s single-threaded",
                      criterion_performance());
    report_criterion(11, "byte-identical reports for identical config and seed",
                      criterion_determinism());

    for (const std::string& note : notes) std::printf("%s\n", note.c_str());
    if (failures == 0)
        std::printf("all 11 acceptance criteria passed\n");
    else
        std::printf("%d acceptance criteria failed\n", failures);
    return failures;
}
