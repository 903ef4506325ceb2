#include "skelscore/ellipse_fit.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <optional>
#include <stdexcept>

namespace skelscore {

namespace {

EllipseFit circle_fit(const std::vector<Vec2>& points, const Vec2& centroid) {
    double radius = 0.0;
    for (const Vec2& p : points) radius += (p - centroid).norm();
    radius /= static_cast<double>(points.size());
    if (!(radius > 0.0)) throw std::invalid_argument("fit_ellipse: unfittable (coincident points)");
    return {centroid, radius, radius, true};
}

// Conic a x^2 + b xy + c y^2 + d x + e y + f = 0 -> center and semi-axes;
// nullopt when the conic is not a real ellipse.
std::optional<EllipseFit> conic_to_ellipse(double a, double b, double c, double d, double e,
                                           double f) {
    if (a + c < 0.0) {  // the conic is defined up to a global sign
        a = -a; b = -b; c = -c; d = -d; e = -e; f = -f;
    }
    Eigen::Matrix2d quad;
    quad << a, 0.5 * b, 0.5 * b, c;
    Eigen::Matrix2d sys;
    sys << 2.0 * a, b, b, 2.0 * c;
    if (std::abs(sys.determinant()) <= 1e-300) return std::nullopt;
    const Vec2 center = sys.inverse() * Vec2(-d, -e);

    const double f0 = a * center.x() * center.x() + b * center.x() * center.y() +
                      c * center.y() * center.y() + d * center.x() + e * center.y() + f;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> solver(quad);
    const double lambda_min = solver.eigenvalues()(0);
    const double lambda_max = solver.eigenvalues()(1);
    if (!(lambda_min > 0.0) || !(f0 < 0.0)) return std::nullopt;

    EllipseFit fit;
    fit.center = center;
    fit.semi_major = std::sqrt(-f0 / lambda_min);
    fit.semi_minor = std::sqrt(-f0 / lambda_max);
    return fit;
}

}  // namespace

EllipseFit fit_ellipse(const std::vector<Vec2>& points) {
    const std::size_t n = points.size();
    if (n < 3) throw std::invalid_argument("fit_ellipse: unfittable (fewer than 3 points)");

    Vec2 centroid = Vec2::Zero();
    for (const Vec2& p : points) centroid += p;
    centroid /= static_cast<double>(n);

    Eigen::Matrix2d scatter = Eigen::Matrix2d::Zero();
    double scale = 0.0;
    for (const Vec2& p : points) {
        const Vec2 d = p - centroid;
        scatter += d * d.transpose();
        scale += d.norm();
    }
    scale /= static_cast<double>(n);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> spread(scatter);
    if (!(scale > 0.0) || spread.eigenvalues()(0) <= 1e-12 * spread.eigenvalues()(1))
        throw std::invalid_argument("fit_ellipse: unfittable (collinear points)");

    if (n < 5) return circle_fit(points, centroid);

    // Direct least-squares conic fit on normalized coordinates, reduced
    // 3x3 eigenproblem form (quadratic block eliminated against the linear
    // block, constraint 4AC - B^2 = 1).
    Eigen::MatrixXd quad_design(n, 3), lin_design(n, 3);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 q = (points[i] - centroid) / scale;
        quad_design(i, 0) = q.x() * q.x();
        quad_design(i, 1) = q.x() * q.y();
        quad_design(i, 2) = q.y() * q.y();
        lin_design(i, 0) = q.x();
        lin_design(i, 1) = q.y();
        lin_design(i, 2) = 1.0;
    }
    const Eigen::Matrix3d s1 = quad_design.transpose() * quad_design;
    const Eigen::Matrix3d s2 = quad_design.transpose() * lin_design;
    const Eigen::Matrix3d s3 = lin_design.transpose() * lin_design;

    Eigen::FullPivLU<Eigen::Matrix3d> lu(s3);
    if (!lu.isInvertible()) return circle_fit(points, centroid);
    const Eigen::Matrix3d elimination = -lu.solve(s2.transpose());
    const Eigen::Matrix3d reduced = s1 + s2 * elimination;

    Eigen::Matrix3d constrained;
    constrained.row(0) = reduced.row(2) * 0.5;
    constrained.row(1) = -reduced.row(1);
    constrained.row(2) = reduced.row(0) * 0.5;

    Eigen::EigenSolver<Eigen::Matrix3d> eigen(constrained);
    std::optional<EllipseFit> best;
    for (int i = 0; i < 3; ++i) {
        if (std::abs(eigen.eigenvalues()(i).imag()) > 1e-9) continue;
        Eigen::Vector3d quad_coeffs = eigen.eigenvectors().col(i).real();
        const double discriminant = 4.0 * quad_coeffs(0) * quad_coeffs(2) -
                                    quad_coeffs(1) * quad_coeffs(1);
        if (!(discriminant > 0.0)) continue;
        const Eigen::Vector3d lin_coeffs = elimination * quad_coeffs;
        auto candidate = conic_to_ellipse(quad_coeffs(0), quad_coeffs(1), quad_coeffs(2),
                                          lin_coeffs(0), lin_coeffs(1), lin_coeffs(2));
        if (candidate) best = candidate;
    }
    if (!best) return circle_fit(points, centroid);

    best->center = centroid + scale * best->center;
    best->semi_major *= scale;
    best->semi_minor *= scale;
    return *best;
}

}  // namespace skelscore
