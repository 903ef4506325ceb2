#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "skelscore/smoothness.hpp"
#include "skelscore/synthetic.hpp"
#include "test_helpers.hpp"

#include <cmath>

using namespace skelscore;

namespace {

SkeletalPointSet line_points(std::size_t n, const Vec3& direction) {
    SkeletalPointSet set;
    for (std::size_t i = 0; i < n; ++i)
        set.points.push_back(static_cast<double>(i) * 0.1 * direction.normalized());
    return set;
}

CurveSkeleton polyline(std::initializer_list<Vec3> vertices) {
    CurveSkeleton skeleton;
    skeleton.vertices.assign(vertices.begin(), vertices.end());
    for (std::size_t i = 0; i + 1 < skeleton.vertices.size(); ++i)
        skeleton.edges.push_back({i, i + 1});
    return skeleton;
}

}  // namespace

TEST_CASE("pca tangent") {
    SUBCASE("axis-aligned line") {
        const auto set = line_points(9, Vec3(1, 0, 0));
        const Vec3 t = pca_tangent(set, 4, 4);
        CHECK(std::abs(std::abs(t.x()) - 1.0) <= 1e-12);
    }
    SUBCASE("diagonal line is the rotation of the previous") {
        const auto set = line_points(9, Vec3(1, 1, 0));
        const Vec3 t = pca_tangent(set, 4, 4);
        CHECK(std::abs(std::abs(t.dot(Vec3(1, 1, 0).normalized())) - 1.0) <= 1e-12);
    }
    SUBCASE("short arc tangent is near the chord") {
        SkeletalPointSet arc;
        for (int i = -3; i <= 3; ++i) {
            const double angle = i * (10.0 * M_PI / 180.0) / 6.0;  // 10 degree arc
            arc.points.push_back({std::sin(angle), 1.0 - std::cos(angle), 0.0});
        }
        const Vec3 t = pca_tangent(arc, 3, 6);
        const double alignment = std::abs(t.dot(Vec3(1, 0, 0)));
        CHECK(std::acos(std::clamp(alignment, 0.0, 1.0)) <= 5.0 * M_PI / 180.0);
    }
    SUBCASE("coincident neighbors are degenerate") {
        SkeletalPointSet set;
        set.points = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
        CHECK_THROWS_AS(pca_tangent(set, 0, 2), std::invalid_argument);
    }
    SUBCASE("k below 2 is rejected") {
        const auto set = line_points(5, Vec3(1, 0, 0));
        CHECK_THROWS_AS(pca_tangent(set, 0, 1), std::invalid_argument);
    }
}

TEST_CASE("direction dissimilarity") {
    CHECK(direction_dissimilarity(Vec3(1, 0, 0), Vec3(2, 0, 0)) == 0.0);
    CHECK(direction_dissimilarity(Vec3(1, 0, 0), Vec3(-3, 0, 0)) == doctest::Approx(1.0));
    CHECK(direction_dissimilarity(Vec3(1, 0, 0), Vec3(0, 5, 0)) == doctest::Approx(0.5));
    CHECK_THROWS_AS(direction_dissimilarity(Vec3(0, 0, 0), Vec3(1, 0, 0)),
                    std::invalid_argument);
}

TEST_CASE("point smoothness") {
    SUBCASE("straight line scores one") {
        const auto set = line_points(20, Vec3(1, 0, 0));
        const auto scores = score_point_smoothness(set, {});
        for (const auto& s : scores) {
            REQUIRE(s.valid);
            CHECK(s.value == doctest::Approx(1.0).epsilon(1e-9));
        }
        const auto overall = overall_point_smoothness(scores);
        CHECK(overall.valid);
        CHECK(overall.value >= 0.99);
    }
    SUBCASE("a corner lowers the overall value") {
        SkeletalPointSet corner;
        for (int i = 0; i < 12; ++i) corner.points.push_back({i * 0.1, 0.0, 0.0});
        for (int i = 1; i < 12; ++i) corner.points.push_back({1.1, i * 0.1, 0.0});
        const auto straight = overall_point_smoothness(
            score_point_smoothness(line_points(23, Vec3(1, 0, 0)), {}));
        const auto bent = overall_point_smoothness(score_point_smoothness(corner, {}));
        CHECK(bent.value < straight.value);
    }
    SUBCASE("sign flips do not change the score") {
        // |1 - 2 Dn| maps Dn and 1 - Dn to the same value
        Rng rng(4);
        for (int trial = 0; trial < 50; ++trial) {
            Vec3 a(rng.gaussian(), rng.gaussian(), rng.gaussian());
            Vec3 b(rng.gaussian(), rng.gaussian(), rng.gaussian());
            if (a.norm() < 1e-6 || b.norm() < 1e-6) continue;
            const double direct = std::abs(1.0 - 2.0 * direction_dissimilarity(a, b));
            const double flipped = std::abs(1.0 - 2.0 * direction_dissimilarity(a, -b));
            CHECK(direct == doctest::Approx(flipped).epsilon(1e-9));
        }
    }
}

TEST_CASE("vertex smoothness") {
    SUBCASE("straight degree-2 vertex") {
        const auto line = polyline({{0, 0, 0}, {1, 0, 0}, {2, 0, 0}});
        const auto score = vertex_smoothness(line, 1, line.adjacency());
        REQUIRE(score.valid);
        CHECK(score.value == doctest::Approx(1.0));
    }
    SUBCASE("right angle scores zero") {
        const auto corner = polyline({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}});
        const auto score = vertex_smoothness(corner, 1, corner.adjacency());
        REQUIRE(score.valid);
        CHECK(score.value == doctest::Approx(0.0));
    }
    SUBCASE("sixty degree turn scores one third") {
        const double turn = 60.0 * M_PI / 180.0;
        const auto bent =
            polyline({{0, 0, 0}, {1, 0, 0}, {1.0 + std::cos(turn), std::sin(turn), 0.0}});
        const auto score = vertex_smoothness(bent, 1, bent.adjacency());
        REQUIRE(score.valid);
        CHECK(score.value == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    }
    SUBCASE("turn-angle table is exact") {
        const double expected[4] = {1.0, 2.0 / 3.0, 1.0 / 3.0, 0.0};
        const double turns[4] = {0.0, 30.0, 60.0, 90.0};
        for (int i = 0; i < 4; ++i) {
            const double turn = turns[i] * M_PI / 180.0;
            const auto bent =
                polyline({{0, 0, 0}, {1, 0, 0}, {1.0 + std::cos(turn), std::sin(turn), 0.0}});
            const auto score = vertex_smoothness(bent, 1, bent.adjacency());
            CHECK(score.value == doctest::Approx(expected[i]).epsilon(1e-12));
        }
    }
    SUBCASE("endpoints and joints score one") {
        CurveSkeleton star;
        star.vertices = {{0, 0, 0}, {1, 0, 0}, {-1, 0, 0}, {0, 1, 0}};
        star.edges = {{0, 1}, {0, 2}, {0, 3}};
        const auto adjacency = star.adjacency();
        CHECK(vertex_smoothness(star, 0, adjacency).value == 1.0);  // joint
        CHECK(vertex_smoothness(star, 1, adjacency).value == 1.0);  // endpoint
    }
    SUBCASE("fold-back carries a warning note") {
        const auto fold = polyline({{0, 0, 0}, {1, 0, 0}, {0.0, 0.1, 0}});
        const auto score = vertex_smoothness(fold, 1, fold.adjacency());
        REQUIRE(score.valid);
        CHECK(score.reason == score_note::fold_back);
        CHECK(score.value > 0.8);  // the formula rewards fold-backs; flagged, not altered
    }
    SUBCASE("zero-length incident edge is invalid") {
        CurveSkeleton degenerate;
        degenerate.vertices = {{0, 0, 0}, {1, 0, 0}, {1, 0, 0}};
        degenerate.edges = {{0, 1}, {1, 2}};
        const auto score = vertex_smoothness(degenerate, 1, degenerate.adjacency());
        CHECK_FALSE(score.valid);
        CHECK(score.reason == invalid_reason::zero_length_edge);
    }
}

TEST_CASE("overall curve smoothness") {
    SUBCASE("straight polyline is one") {
        const auto line = polyline({{0, 0, 0}, {1, 0, 0}, {2, 0, 0}});
        CHECK(overall_curve_smoothness(line).value == doctest::Approx(1.0));
    }
    SUBCASE("right angle with unit edges is one half") {
        const auto corner = polyline({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}});
        CHECK(overall_curve_smoothness(corner).value == doctest::Approx(0.5).epsilon(1e-12));
    }
    SUBCASE("star graph has no degree-2 vertices") {
        CurveSkeleton star;
        star.vertices = {{0, 0, 0}, {1, 0, 0}, {-1, 0, 0}, {0, 1, 0}};
        star.edges = {{0, 1}, {0, 2}, {0, 3}};
        CHECK(overall_curve_smoothness(star).value == doctest::Approx(1.0));
    }
    SUBCASE("weighted identity endpoints") {
        // all vertex scores 1 => value 1; forcing scores to 0 at every
        // degree-2 vertex of a closed loop gives 0
        CurveSkeleton loop;
        const int n = 8;
        for (int i = 0; i < n; ++i) {
            const double a = 2.0 * M_PI * i / n;
            loop.vertices.push_back({std::cos(a), std::sin(a), 0.0});
        }
        for (int i = 0; i < n; ++i)
            loop.edges.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>((i + 1) % n)});
        const auto result = overall_curve_smoothness(loop);
        // octagon interior turns are 45 degrees: s = |1 - 2*45/180| = 0.5
        CHECK(result.value == doctest::Approx(0.5).epsilon(1e-12));
    }
    SUBCASE("zero total length throws") {
        CurveSkeleton degenerate;
        degenerate.vertices = {{0, 0, 0}, {0, 0, 0}};
        degenerate.edges = {{0, 1}};
        CHECK_THROWS_AS(overall_curve_smoothness(degenerate), std::invalid_argument);
    }
}

TEST_CASE("smoothness is invariant under rigid motion and scaling") {
    Rng rng(71);
    const auto base = polyline({{0, 0, 0}, {1, 0, 0}, {1.7, 0.4, 0.2}, {2.0, 1.1, -0.3}});
    const double reference = overall_curve_smoothness(base).value;
    for (int trial = 0; trial < 10; ++trial) {
        auto moved = testing::random_rigid_motion(rng).apply(base);
        const double s = rng.uniform(0.2, 5.0);
        for (Vec3& v : moved.vertices) v *= s;
        CHECK(std::abs(overall_curve_smoothness(moved).value - reference) <= 1e-12);
    }

    const auto set = line_points(15, Vec3(1, 2, 3));
    const auto base_scores = score_point_smoothness(set, {});
    auto motion = testing::random_rigid_motion(rng);
    const auto moved_scores = score_point_smoothness(motion.apply(set), {});
    for (std::size_t i = 0; i < base_scores.size(); ++i)
        CHECK(std::abs(base_scores[i].value - moved_scores[i].value) <= 1e-9);
}

TEST_CASE("smoothness values stay in the unit interval") {
    Rng rng(81);
    for (int trial = 0; trial < 10; ++trial) {
        const auto cloud = testing::random_cloud(rng, 60);
        SkeletalPointSet set;
        set.points = cloud.points;
        for (const auto& s : score_point_smoothness(set, {})) {
            if (!s.valid) continue;
            CHECK(s.value >= 0.0);
            CHECK(s.value <= 1.0);
        }
    }
}

TEST_CASE("serial and parallel smoothness agree exactly") {
    const auto shape = generate(ShapeKind::Cylinder, {}, 600, 5);
    SkeletalPointSet set;
    set.points = shape.cloud.points;
    SmoothnessOptions serial;
    serial.exec = Execution::Serial;
    SmoothnessOptions parallel;
    parallel.exec = Execution::Parallel;
    const auto a = score_point_smoothness(set, serial);
    const auto b = score_point_smoothness(set, parallel);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].value == b[i].value);
}
