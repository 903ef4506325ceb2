#include "skelscore/degrade.hpp"

#include "skelscore/rng.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace skelscore {

PointCloud degrade_noise(const PointCloud& cloud, double fraction, std::uint64_t seed) {
    validate_cloud(cloud);
    if (fraction < 0.0) throw std::invalid_argument("degrade_noise: fraction must be >= 0");
    if (fraction == 0.0) return cloud;

    const double sigma = fraction * bounding_box_diagonal(cloud);
    Rng rng(seed);
    PointCloud out;
    out.points.reserve(cloud.size());
    for (const Vec3& p : cloud.points)
        out.points.push_back(p + sigma * Vec3(rng.gaussian(), rng.gaussian(), rng.gaussian()));
    return out;
}

namespace {

std::size_t voxel_count(const PointCloud& cloud, const Vec3& origin, double grid,
                        PointCloud* averaged) {
    struct Accumulator {
        Vec3 sum = Vec3::Zero();
        std::size_t count = 0;
        std::size_t order = 0;
    };
    std::unordered_map<std::uint64_t, Accumulator> voxels;
    voxels.reserve(cloud.size());
    for (const Vec3& p : cloud.points) {
        const auto ix = static_cast<std::uint64_t>(std::floor((p.x() - origin.x()) / grid));
        const auto iy = static_cast<std::uint64_t>(std::floor((p.y() - origin.y()) / grid));
        const auto iz = static_cast<std::uint64_t>(std::floor((p.z() - origin.z()) / grid));
        const std::uint64_t key = (ix & 0x1FFFFF) | ((iy & 0x1FFFFF) << 21) | ((iz & 0x1FFFFF) << 42);
        auto& acc = voxels[key];
        if (acc.count == 0) acc.order = voxels.size() - 1;  // first-occurrence rank
        acc.sum += p;
        acc.count += 1;
    }
    if (averaged) {
        std::vector<std::pair<std::size_t, Vec3>> ordered;
        ordered.reserve(voxels.size());
        for (const auto& [key, acc] : voxels)
            ordered.push_back({acc.order, acc.sum / static_cast<double>(acc.count)});
        std::sort(ordered.begin(), ordered.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        averaged->points.clear();
        averaged->points.reserve(ordered.size());
        for (const auto& [order, centroid] : ordered) averaged->points.push_back(centroid);
    }
    return voxels.size();
}

}  // namespace

DownsampleResult degrade_downsample(const PointCloud& cloud, std::size_t target_n) {
    validate_cloud(cloud);
    if (target_n < 1 || target_n > cloud.size())
        throw std::invalid_argument("degrade_downsample: require 1 <= target_n <= n");

    DownsampleResult result;
    if (target_n == cloud.size()) {  // grid below the minimum spacing: identity
        result.cloud = cloud;
        result.grid_size = 0.0;
        return result;
    }

    Vec3 lo = cloud[0];
    Vec3 hi = cloud[0];
    for (const Vec3& p : cloud.points) {
        lo = lo.cwiseMin(p);
        hi = hi.cwiseMax(p);
    }
    const double diagonal = (hi - lo).norm();
    if (diagonal <= 0.0) {  // all points coincident: one voxel is the best we can do
        result.cloud.points.push_back(cloud[0]);
        result.grid_size = 1.0;
        result.reached_target = target_n == 1;
        return result;
    }
    const Vec3 origin = lo - Vec3::Constant(1e-9 * diagonal);

    const std::size_t tolerance = std::max<std::size_t>(1, target_n / 20);  // within 5%
    double lo_grid = diagonal * 1e-6;                                       // ~everything distinct
    double hi_grid = 2.0 * diagonal;                                        // one voxel
    double best_grid = lo_grid;
    std::size_t best_count = voxel_count(cloud, origin, lo_grid, nullptr);

    for (int iteration = 0; iteration < 60; ++iteration) {
        const double mid = 0.5 * (lo_grid + hi_grid);
        const std::size_t count = voxel_count(cloud, origin, mid, nullptr);
        const auto distance = [&](std::size_t c) {
            return c > target_n ? c - target_n : target_n - c;
        };
        if (distance(count) < distance(best_count) ||
            (distance(count) == distance(best_count) && count > best_count)) {
            best_count = count;
            best_grid = mid;
        }
        if (distance(count) <= tolerance) break;
        if (count > target_n)
            lo_grid = mid;  // voxels too small, coarsen
        else
            hi_grid = mid;
    }

    result.grid_size = best_grid;
    result.reached_target =
        (best_count > target_n ? best_count - target_n : target_n - best_count) <= tolerance;
    voxel_count(cloud, origin, best_grid, &result.cloud);
    return result;
}

}  // namespace skelscore
