#include "skelscore/synthetic.hpp"

#include "skelscore/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace skelscore {

std::optional<ShapeKind> shape_kind_from_string(const std::string& name) {
    if (name == "sphere") return ShapeKind::Sphere;
    if (name == "cylinder") return ShapeKind::Cylinder;
    if (name == "torus") return ShapeKind::Torus;
    if (name == "box") return ShapeKind::Box;
    if (name == "dumbbell") return ShapeKind::Dumbbell;
    if (name == "l-polyline" || name == "lpolyline") return ShapeKind::LPolyline;
    return std::nullopt;
}

const char* to_string(ShapeKind kind) {
    switch (kind) {
        case ShapeKind::Sphere: return "sphere";
        case ShapeKind::Cylinder: return "cylinder";
        case ShapeKind::Torus: return "torus";
        case ShapeKind::Box: return "box";
        case ShapeKind::Dumbbell: return "dumbbell";
        case ShapeKind::LPolyline: return "l-polyline";
    }
    return "unknown";
}

namespace {

void require(bool ok, const char* message) {
    if (!ok) throw std::invalid_argument(message);
}

CurveSkeleton straight_polyline(const Vec3& from, const Vec3& to, int segments) {
    CurveSkeleton skeleton;
    const int count = std::max(segments, 1);
    for (int i = 0; i <= count; ++i) {
        const double t = static_cast<double>(i) / count;
        skeleton.vertices.push_back((1.0 - t) * from + t * to);
    }
    for (int i = 0; i < count; ++i)
        skeleton.edges.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(i + 1)});
    return skeleton;
}

Vec3 fibonacci_sphere_point(std::size_t i, std::size_t n, double radius) {
    const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(n);
    const double ring = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double angle = 2.0 * M_PI * static_cast<double>(i) / golden;
    return radius * Vec3(ring * std::cos(angle), ring * std::sin(angle), z);
}

Vec3 random_sphere_point(Rng& rng, double radius, const Vec3& center) {
    const double z = rng.uniform(-1.0, 1.0);
    const double angle = rng.uniform(0.0, 2.0 * M_PI);
    const double ring = std::sqrt(std::max(0.0, 1.0 - z * z));
    return center + radius * Vec3(ring * std::cos(angle), ring * std::sin(angle), z);
}

// Closed cylinder of radius r, height L centered at the origin, axis = z:
// side plus both cap disks, chosen by surface area.
Vec3 random_cylinder_point(Rng& rng, double radius, double length) {
    const double side = 2.0 * M_PI * radius * length;
    const double caps = 2.0 * M_PI * radius * radius;
    const double pick = rng.uniform(0.0, side + caps);
    const double angle = rng.uniform(0.0, 2.0 * M_PI);
    if (pick < side) {
        const double z = rng.uniform(-0.5 * length, 0.5 * length);
        return {radius * std::cos(angle), radius * std::sin(angle), z};
    }
    const double rr = radius * std::sqrt(rng.uniform());
    const double z = pick < side + 0.5 * caps ? 0.5 * length : -0.5 * length;
    return {rr * std::cos(angle), rr * std::sin(angle), z};
}

Vec3 torus_point(double major, double minor, double u, double v) {
    const double ring = major + minor * std::cos(v);
    return {ring * std::cos(u), ring * std::sin(u), minor * std::sin(v)};
}

}  // namespace

SyntheticShape generate(ShapeKind kind, const ShapeParams& params, std::size_t n,
                        std::uint64_t seed) {
    require(n >= 4, "generate: need n >= 4");
    SyntheticShape shape;
    shape.kind = kind;
    shape.cloud.points.reserve(n);
    Rng rng(seed);

    switch (kind) {
        case ShapeKind::Sphere: {
            require(params.radius > 0.0, "generate: sphere radius must be positive");
            for (std::size_t i = 0; i < n; ++i)
                shape.cloud.points.push_back(fibonacci_sphere_point(i, n, params.radius));
            break;
        }
        case ShapeKind::Cylinder: {
            require(params.radius > 0.0 && params.length > 0.0,
                    "generate: cylinder radius and length must be positive");
            for (std::size_t i = 0; i < n; ++i)
                shape.cloud.points.push_back(
                    random_cylinder_point(rng, params.radius, params.length));
            // the medial curve ends where the inscribed ball touches the caps
            const double reach = std::max(0.5 * params.length - params.radius,
                                          0.25 * params.length);
            shape.ground_truth = straight_polyline(Vec3(0, 0, -reach), Vec3(0, 0, reach),
                                                   params.axis_segments);
            break;
        }
        case ShapeKind::Torus: {
            require(params.major_radius > params.minor_radius && params.minor_radius > 0.0,
                    "generate: torus requires 0 < minor < major");
            while (shape.cloud.points.size() < n) {
                const double u = rng.uniform(0.0, 2.0 * M_PI);
                const double v = rng.uniform(0.0, 2.0 * M_PI);
                // area element is proportional to (R + r cos v)
                const double accept = (params.major_radius + params.minor_radius * std::cos(v)) /
                                      (params.major_radius + params.minor_radius);
                if (rng.uniform() <= accept)
                    shape.cloud.points.push_back(
                        torus_point(params.major_radius, params.minor_radius, u, v));
            }
            CurveSkeleton circle;
            const int segments = std::max(params.circle_segments, 3);
            for (int i = 0; i < segments; ++i) {
                const double angle = 2.0 * M_PI * i / segments;
                circle.vertices.push_back(params.major_radius *
                                          Vec3(std::cos(angle), std::sin(angle), 0.0));
            }
            for (int i = 0; i < segments; ++i)
                circle.edges.push_back(
                    {static_cast<std::size_t>(i), static_cast<std::size_t>((i + 1) % segments)});
            shape.ground_truth = std::move(circle);
            break;
        }
        case ShapeKind::Box: {
            const Vec3 ext = params.box_extent;
            require(ext.x() > 0.0 && ext.y() > 0.0 && ext.z() > 0.0,
                    "generate: box extents must be positive");
            const double area_xy = ext.x() * ext.y();
            const double area_xz = ext.x() * ext.z();
            const double area_yz = ext.y() * ext.z();
            const double total = 2.0 * (area_xy + area_xz + area_yz);
            for (std::size_t i = 0; i < n; ++i) {
                double pick = rng.uniform(0.0, total);
                Vec3 p(rng.uniform(-0.5, 0.5) * ext.x(), rng.uniform(-0.5, 0.5) * ext.y(),
                       rng.uniform(-0.5, 0.5) * ext.z());
                const double sign = pick < total / 2.0 ? 0.5 : -0.5;
                pick = std::fmod(pick, total / 2.0);
                if (pick < area_xy)
                    p.z() = sign * ext.z();
                else if (pick < area_xy + area_xz)
                    p.y() = sign * ext.y();
                else
                    p.x() = sign * ext.x();
                shape.cloud.points.push_back(p);
            }
            break;
        }
        case ShapeKind::Dumbbell: {
            require(params.radius > 0.0 && params.length > 0.0 && params.neck_radius > 0.0,
                    "generate: dumbbell radii and length must be positive");
            const double bulb = 4.0 * M_PI * params.radius * params.radius;
            const double neck = 2.0 * M_PI * params.neck_radius * params.length;
            const Vec3 centers[2] = {Vec3(0, 0, -0.5 * params.length),
                                     Vec3(0, 0, 0.5 * params.length)};
            for (std::size_t i = 0; i < n; ++i) {
                const double pick = rng.uniform(0.0, 2.0 * bulb + neck);
                if (pick < 2.0 * bulb) {
                    shape.cloud.points.push_back(
                        random_sphere_point(rng, params.radius, centers[pick < bulb ? 0 : 1]));
                } else {
                    const double angle = rng.uniform(0.0, 2.0 * M_PI);
                    const double z = rng.uniform(-0.5 * params.length, 0.5 * params.length);
                    shape.cloud.points.push_back(Vec3(params.neck_radius * std::cos(angle),
                                                      params.neck_radius * std::sin(angle), z));
                }
            }
            shape.ground_truth = straight_polyline(centers[0], centers[1], params.axis_segments);
            break;
        }
        case ShapeKind::LPolyline: {
            require(params.radius > 0.0 && params.length > 0.0,
                    "generate: tube radius and leg length must be positive");
            const Vec3 corner(0, 0, 0);
            const Vec3 end_a(0, 0, params.length);
            const Vec3 end_b(params.length, 0, 0);
            // two tube legs, area-weighted equally, with caps on the free ends
            const double leg = 2.0 * M_PI * params.radius * params.length;
            const double cap = M_PI * params.radius * params.radius;
            for (std::size_t i = 0; i < n; ++i) {
                const double pick = rng.uniform(0.0, 2.0 * leg + 2.0 * cap);
                const double angle = rng.uniform(0.0, 2.0 * M_PI);
                if (pick < leg) {  // leg along z
                    const double z = rng.uniform(0.0, params.length);
                    shape.cloud.points.push_back(Vec3(params.radius * std::cos(angle),
                                                      params.radius * std::sin(angle), z));
                } else if (pick < 2.0 * leg) {  // leg along x
                    const double x = rng.uniform(0.0, params.length);
                    shape.cloud.points.push_back(Vec3(x, params.radius * std::sin(angle),
                                                      params.radius * std::cos(angle)));
                } else {
                    const double rr = params.radius * std::sqrt(rng.uniform());
                    if (pick < 2.0 * leg + cap)
                        shape.cloud.points.push_back(end_a + Vec3(rr * std::cos(angle),
                                                                  rr * std::sin(angle), 0.0));
                    else
                        shape.cloud.points.push_back(end_b + Vec3(0.0, rr * std::sin(angle),
                                                                  rr * std::cos(angle)));
                }
            }
            const double inset = std::min(params.radius, 0.25 * params.length);
            CurveSkeleton path = straight_polyline(end_a - Vec3(0, 0, inset), corner,
                                                   params.axis_segments);
            const std::size_t corner_index = path.vertices.size() - 1;
            CurveSkeleton second = straight_polyline(corner, end_b - Vec3(inset, 0, 0),
                                                     params.axis_segments);
            for (std::size_t v = 1; v < second.vertices.size(); ++v)
                path.vertices.push_back(second.vertices[v]);
            for (std::size_t e = 0; e < second.edges.size(); ++e) {
                const std::size_t a = e == 0 ? corner_index : corner_index + e;
                path.edges.push_back({a, corner_index + e + 1});
            }
            shape.ground_truth = std::move(path);
            break;
        }
    }
    return shape;
}

}  // namespace skelscore
