#pragma once

#include "skelscore/geometry.hpp"

#include <array>
#include <vector>

namespace skelscore {

/// Delaunay triangulation of a 2D point set.
///
/// Incremental insertion with Lawson flips. Points coinciding with an
/// already-inserted point (within a relative tolerance) are skipped and never
/// referenced by the output. Returns CCW triangles as index triples into the
/// input array; fewer than 3 distinct non-collinear points give an empty set.
std::vector<std::array<int, 3>> delaunay_triangulate(const std::vector<Vec2>& points);

}  // namespace skelscore
