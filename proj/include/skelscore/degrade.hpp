#pragma once

#include "skelscore/geometry.hpp"

#include <cstdint>

namespace skelscore {

/// Adds zero-mean isotropic Gaussian offsets to every point, with
/// sigma = fraction x the cloud's bounding-box diagonal. Deterministic
/// under the seed; fraction 0 returns the cloud unchanged.
PointCloud degrade_noise(const PointCloud& cloud, double fraction, std::uint64_t seed);

struct DownsampleResult {
    PointCloud cloud;
    double grid_size = 0.0;
    bool reached_target = true;  // false when the closest achievable count was used
};

/// Grid-averaged sampling: voxel-grid averaging with the grid size
/// binary-searched so the output count lands within 5% of target_n; each
/// output point is the centroid of its voxel's points, ordered by first
/// occurrence. Unreachable targets return the closest achievable count with
/// reached_target = false.
DownsampleResult degrade_downsample(const PointCloud& cloud, std::size_t target_n);

}  // namespace skelscore
