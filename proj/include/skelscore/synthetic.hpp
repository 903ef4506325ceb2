#pragma once

#include "skelscore/geometry.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace skelscore {

enum class ShapeKind { Sphere, Cylinder, Torus, Box, Dumbbell, LPolyline };

std::optional<ShapeKind> shape_kind_from_string(const std::string& name);
const char* to_string(ShapeKind kind);

/// Kind-specific parameters (unused fields are ignored per kind).
struct ShapeParams {
    double radius = 1.0;        // sphere/cylinder/dumbbell-bulb/tube radius
    double length = 1.0;        // cylinder height, dumbbell center distance, L leg length
    double major_radius = 1.0;  // torus ring radius
    double minor_radius = 0.2;  // torus tube radius
    Vec3 box_extent = Vec3(1.0, 1.0, 1.0);
    double neck_radius = 0.12;  // dumbbell connecting bar
    int axis_segments = 10;     // edges in straight ground-truth polylines
    int circle_segments = 64;   // edges in the torus ground-truth circle
};

/// Synthetic surface sampling plus the analytically known curve skeleton
/// where one exists (cylinder axis, torus center circle, dumbbell axis,
/// L path). Sphere and box have no curve ground truth.
struct SyntheticShape {
    ShapeKind kind = ShapeKind::Sphere;
    PointCloud cloud;
    std::optional<CurveSkeleton> ground_truth;
};

/// Surface-uniform sampling: Fibonacci lattice for spheres (deterministic),
/// area-weighted seeded sampling for the other kinds. Requires n >= 4;
/// throws on non-positive dimensions.
SyntheticShape generate(ShapeKind kind, const ShapeParams& params, std::size_t n,
                        std::uint64_t seed);

}  // namespace skelscore
