#pragma once

#include "skelscore/geometry.hpp"

#include <vector>

namespace skelscore {

struct EllipseFit {
    Vec2 center = Vec2::Zero();
    double semi_major = 0.0;  // l_a >= l_b > 0
    double semi_minor = 0.0;
    bool circle_fallback = false;
};

/// Best-fit ellipse of a 2D point set.
///
/// With 5 or more points, the direct least-squares conic fit under the
/// constraint 4AC - B^2 = 1 (computed on centered, scaled coordinates for
/// conditioning). 3 or 4 points, or a non-elliptic conic result, fall back
/// to a circle fit (centroid center, mean-distance radius). Throws
/// std::invalid_argument for fewer than 3 points or collinear input.
EllipseFit fit_ellipse(const std::vector<Vec2>& points);

}  // namespace skelscore
