#include "gafault/gac.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "gafault/error.hpp"

namespace gafault::gac {

namespace {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<Vec3, 3>;

// Slots of the active parameters (v1, v2, v3, v6) inside the 8x8 P matrix.
constexpr std::array<std::size_t, 4> kActive{0, 1, 2, 5};
// Ellipse constraint v1^2 - v2^2 - v3^2 on the quadratic part.
constexpr Vec3 kConstraint{1.0, -1.0, -1.0};

Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double dot3(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

// Real roots of x^3 + a x^2 + b x + c.
std::vector<double> cubic_roots(double a, double b, double c) {
    const double p = b - a * a / 3.0;
    const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    const double shift = -a / 3.0;
    std::vector<double> roots;
    const double disc = q * q / 4.0 + p * p * p / 27.0;
    if (p < 0.0 && disc <= 0.0) {
        const double r = 2.0 * std::sqrt(-p / 3.0);
        const double arg = std::clamp(3.0 * q / (p * r), -1.0, 1.0);
        const double phi = std::acos(arg) / 3.0;
        for (int k = 0; k < 3; ++k) {
            roots.push_back(shift + r * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0));
        }
    } else {
        const double sq = std::sqrt(std::max(disc, 0.0));
        roots.push_back(shift + std::cbrt(-q / 2.0 + sq) + std::cbrt(-q / 2.0 - sq));
    }
    // One Newton step on the undepressed polynomial.
    for (double& x : roots) {
        const double f = ((x + a) * x + b) * x + c;
        const double df = (3.0 * x + 2.0 * a) * x + b;
        if (df != 0.0) x -= f / df;
    }
    return roots;
}

// Null vector of a singular symmetric 3x3 matrix from its best row cross product.
std::optional<Vec3> null_vector(const Mat3& m) {
    const std::array<Vec3, 3> candidates{cross(m[0], m[1]), cross(m[0], m[2]), cross(m[1], m[2])};
    const Vec3* best = nullptr;
    double best_norm = 0.0;
    for (const auto& c : candidates) {
        const double n = std::sqrt(dot3(c, c));
        if (n > best_norm) {
            best_norm = n;
            best = &c;
        }
    }
    double scale = 0.0;
    for (const auto& row : m) scale = std::max(scale, dot3(row, row));
    if (best == nullptr || best_norm <= 1e-14 * scale) return std::nullopt;
    return Vec3{(*best)[0] / best_norm, (*best)[1] / best_norm, (*best)[2] / best_norm};
}

}  // namespace

GacPoint embed_point(Point2 p) {
    return {1.0,
            0.0,
            0.0,
            p.x,
            p.y,
            0.5 * (p.x * p.x + p.y * p.y),
            0.5 * (p.x * p.x - p.y * p.y),
            p.x * p.y};
}

Matrix8 bilinear_form() {
    Matrix8 b{};
    for (std::size_t i = 0; i < 3; ++i) {
        b[i][i + 5] = -1.0;
        b[i + 5][i] = -1.0;
    }
    b[3][3] = 1.0;
    b[4][4] = 1.0;
    return b;
}

GacPoint ConicVector::full() const { return {v[0], v[1], v[2], v[3], v[4], v[5], 0.0, 0.0}; }

Matrix8 build_p_matrix(std::span<const Point2> points, std::size_t min_points) {
    if (points.empty() || points.size() < min_points) {
        throw Error(ErrorCode::InsufficientPoints,
                    "need at least " + std::to_string(std::max<std::size_t>(min_points, 1)) +
                        " points, got " + std::to_string(points.size()));
    }
    const Matrix8 bf = bilinear_form();
    Matrix8 p{};
    for (const Point2& pt : points) {
        const GacPoint x = embed_point(pt);
        GacPoint bx{};
        for (std::size_t i = 0; i < 8; ++i) {
            for (std::size_t j = 0; j < 8; ++j) bx[i] += bf[i][j] * x[j];
        }
        for (std::size_t i = 0; i < 8; ++i) {
            for (std::size_t j = 0; j < 8; ++j) p[i][j] += bx[i] * bx[j];
        }
    }
    const double inv_n = 1.0 / static_cast<double>(points.size());
    for (auto& row : p) {
        for (double& e : row) e *= inv_n;
    }
    return p;
}

ConicFit fit_centered_conic(std::span<const Point2> points) {
    if (points.size() < 4) {
        throw Error(ErrorCode::InsufficientPoints,
                    "centred conic fit needs 4 points, got " + std::to_string(points.size()));
    }

    // Work at unit RMS radius so P is well scaled for volt- and p.u.-sized input.
    double ms = 0.0;
    for (const Point2& p : points) ms += p.x * p.x + p.y * p.y;
    const double scale = std::sqrt(ms / static_cast<double>(points.size()));
    if (!(scale > 0.0) || !std::isfinite(scale)) {
        throw Error(ErrorCode::NoNonNegativeEigenvalue, "all points at the origin");
    }
    std::vector<Point2> scaled(points.begin(), points.end());
    for (Point2& p : scaled) {
        p.x /= scale;
        p.y /= scale;
    }
    const Matrix8 p = build_p_matrix(scaled);

    // Reduced matrix on (v1, v2, v3, v6); v6 carries no constraint weight, so
    // it is eliminated through the Schur complement of its diagonal entry.
    std::array<std::array<double, 4>, 4> pr{};
    double pr_norm = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            pr[i][j] = p[kActive[i]][kActive[j]];
            pr_norm += pr[i][j] * pr[i][j];
        }
    }
    pr_norm = std::sqrt(pr_norm);
    const double s22 = pr[3][3];
    Mat3 m{};
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) m[i][j] = pr[i][j] - pr[i][3] * pr[3][j] / s22;
    }

    // det(M - lambda C) = 0  <=>  eigenvalues of C M (C is its own inverse).
    Mat3 cm{};
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) cm[i][j] = kConstraint[i] * m[i][j];
    }
    const double tr = cm[0][0] + cm[1][1] + cm[2][2];
    const double minors = cm[0][0] * cm[1][1] - cm[0][1] * cm[1][0] + cm[0][0] * cm[2][2] -
                          cm[0][2] * cm[2][0] + cm[1][1] * cm[2][2] - cm[1][2] * cm[2][1];
    const double det = dot3(cm[0], cross(cm[1], cm[2]));
    std::vector<double> lambdas = cubic_roots(-tr, minors, -det);
    std::sort(lambdas.begin(), lambdas.end());

    const double tol = -1e-9 * pr_norm;
    for (double lambda : lambdas) {
        if (lambda < tol) continue;
        Mat3 a = m;
        for (std::size_t i = 0; i < 3; ++i) a[i][i] -= lambda * kConstraint[i];
        const auto v = null_vector(a);
        if (!v) continue;
        const double vcv = kConstraint[0] * (*v)[0] * (*v)[0] + kConstraint[1] * (*v)[1] * (*v)[1] +
                           kConstraint[2] * (*v)[2] * (*v)[2];
        if (vcv <= 0.0) continue;

        const double v6 = -(pr[3][0] * (*v)[0] + pr[3][1] * (*v)[1] + pr[3][2] * (*v)[2]) / s22;
        const double vnorm = std::sqrt(dot3(*v, *v) + v6 * v6);
        const double v1 = (*v)[0];
        if (std::abs(v1) < 1e-12 * vnorm) {
            throw Error(ErrorCode::SingularNormalization, "first conic coefficient vanishes");
        }
        ConicFit fit;
        fit.conic.v = {1.0, (*v)[1] / v1, (*v)[2] / v1, 0.0, 0.0, v6 / v1 * scale * scale};
        fit.conic.normalized = true;
        fit.eigenvalue = lambda;
        fit.scale = scale;
        return fit;
    }
    throw Error(ErrorCode::NoNonNegativeEigenvalue, "no elliptic eigenvector for these points");
}

ConicKind classify_conic(const ConicVector& q, double circle_tol) {
    if (q.v1() == 0.0) return ConicKind::NotEllipse;
    const double alpha = std::hypot(q.v2(), q.v3()) / std::abs(q.v1());
    const double beta = -2.0 * q.v6() / q.v1();
    if (alpha >= 1.0 || beta <= 0.0) return ConicKind::NotEllipse;
    return alpha < circle_tol ? ConicKind::Circle : ConicKind::Ellipse;
}

double fold_half_turn(double angle) {
    constexpr double pi = std::numbers::pi;
    double t = std::fmod(angle, pi);
    if (t < 0.0) t += pi;
    if (t >= pi) t -= pi;
    return t;
}

double extract_angle(const ConicVector& q) {
    if (q.v2() == 0.0 && q.v3() == 0.0) return 0.0;
    // With v1 = 1 the quadratic part is (1 + v2) x^2 + 2 v3 x y + (1 - v2) y^2;
    // the major axis follows its smaller eigenvalue, at half the angle of
    // (-v2, -v3).
    const double sign = q.v1() < 0.0 ? -1.0 : 1.0;
    return fold_half_turn(0.5 * std::atan2(-sign * q.v3(), -sign * q.v2()));
}

SemiAxes extract_semiaxes(const ConicVector& q) {
    if (q.v1() == 0.0) throw Error(ErrorCode::NotAnEllipse, "v1 = 0");
    const double alpha = std::hypot(q.v2(), q.v3()) / std::abs(q.v1());
    const double beta = -2.0 * q.v6() / q.v1();
    if (alpha >= 1.0 || beta <= 0.0) {
        throw Error(ErrorCode::NotAnEllipse, "alpha=" + std::to_string(alpha) +
                                                 " beta=" + std::to_string(beta));
    }
    return {std::sqrt(beta / (1.0 - alpha)), std::sqrt(beta / (1.0 + alpha))};
}

EllipseParams extract_ellipse(const ConicVector& q, double circle_tol) {
    const SemiAxes ax = extract_semiaxes(q);
    const double alpha = std::hypot(q.v2(), q.v3()) / std::abs(q.v1());
    return {ax.a, ax.b, alpha < circle_tol ? 0.0 : extract_angle(q)};
}

LineParams fit_line_tls(std::span<const Point2> points) {
    if (points.size() < 2) {
        throw Error(ErrorCode::InsufficientPoints,
                    "line fit needs 2 points, got " + std::to_string(points.size()));
    }
    double spread = 0.0;
    double extent = 0.0;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (const Point2& p : points) {
        spread = std::max(spread, std::hypot(p.x - points[0].x, p.y - points[0].y));
        extent = std::max(extent, std::hypot(p.x, p.y));
        sxx += p.x * p.x;
        syy += p.y * p.y;
        sxy += p.x * p.y;
    }
    if (spread <= 1e-12 * extent || extent == 0.0) {
        throw Error(ErrorCode::DegenerateCloud, "all points coincide");
    }
    // Principal direction of the second-moment matrix about the origin;
    // atan2(0, 0) = 0 resolves the isotropic case to the smallest angle.
    const double angle = fold_half_turn(0.5 * std::atan2(2.0 * sxy, sxx - syy));
    const double ux = std::cos(angle);
    const double uy = std::sin(angle);
    double half = 0.0;
    for (const Point2& p : points) half = std::max(half, std::abs(p.x * ux + p.y * uy));
    return {angle, half};
}

}  // namespace gafault::gac
