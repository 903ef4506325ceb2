#pragma once

#include "skelscore/geometry.hpp"

#include <array>
#include <cstdint>
#include <string>

namespace skelscore {

/// Loads a point cloud, picking the parser from the file extension
/// (.ply -> PLY, anything else -> whitespace XYZ rows).
PointCloud load_point_cloud(const std::string& path);

/// Whitespace-separated floats, three per row; blank lines and #-comments
/// are skipped. Parse failures throw std::runtime_error with "path:line".
PointCloud load_xyz(const std::string& path);
void save_xyz(const PointCloud& cloud, const std::string& path);

/// PLY vertex positions. ASCII and binary_little_endian, float or double
/// x/y/z; extra fixed-size vertex properties are skipped, elements after the
/// vertex element are ignored, faces included. List properties before the
/// vertex data are unsupported.
PointCloud load_ply(const std::string& path);
void save_ply(const PointCloud& cloud, const std::string& path, bool binary = true);

/// Per-vertex colors, e.g. metric scores mapped through a colormap.
void save_ply_colored(const std::vector<Vec3>& points,
                      const std::vector<std::array<std::uint8_t, 3>>& colors,
                      const std::string& path);

/// Loads a curve skeleton: .obj uses `v`/`l` records (1-based indices, `l`
/// chains split into pairs), anything else is the edge-list format
/// ("n m" header, n vertex rows, m 0-based "i j" rows).
CurveSkeleton load_curve_skeleton(const std::string& path);
CurveSkeleton load_obj_lines(const std::string& path);
CurveSkeleton load_edge_list(const std::string& path);
void save_obj_lines(const CurveSkeleton& skeleton, const std::string& path);
void save_edge_list(const CurveSkeleton& skeleton, const std::string& path);

/// Index correspondence file: one original index per skeletal point.
std::vector<std::size_t> load_correspondence(const std::string& path);

}  // namespace skelscore
