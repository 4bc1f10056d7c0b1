#pragma once

// Conic fitting in the Geometric Algebra for Conics (GAC, G(5,3)).
//
// Only the matrix machinery is needed here: points embed as 8-component
// vectors, conics as 6-coefficient vectors, and incidence is the bilinear
// form between them. Fits are restricted to origin-centred ellipses.

#include <array>
#include <cstddef>
#include <span>

namespace gafault::gac {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

/// Components in the order (s0, s~0, s-0, s1, s2, sinf, s~inf, s-inf).
using GacPoint = std::array<double, 8>;
using Matrix8 = std::array<std::array<double, 8>, 8>;

inline constexpr double kCircleTolerance = 1e-3;

GacPoint embed_point(Point2 p);

/// Inner-product matrix of G(5,3): [[0,0,-I3],[0,I2,0],[-I3,0,0]].
Matrix8 bilinear_form();

/// P = (1/N) B D D^T B with D the 8xN matrix of embedded points.
/// Throws InsufficientPoints when fewer than min_points are given.
Matrix8 build_p_matrix(std::span<const Point2> points, std::size_t min_points = 4);

/// Coefficients v1..v6 on (s0, s~0, s-0, s1, s2, sinf).
struct ConicVector {
    std::array<double, 6> v{};
    bool normalized = false;

    double v1() const { return v[0]; }
    double v2() const { return v[1]; }
    double v3() const { return v[2]; }
    double v4() const { return v[3]; }
    double v5() const { return v[4]; }
    double v6() const { return v[5]; }

    /// Pads to 8 components (zeros on s~inf, s-inf) for use with bilinear_form().
    GacPoint full() const;
};

enum class ConicKind { Ellipse, Circle, NotEllipse };

ConicKind classify_conic(const ConicVector& q, double circle_tol = kCircleTolerance);

struct ConicFit {
    ConicVector conic;     // normalized, v4 = v5 = 0
    double eigenvalue = 0;  // selected generalized eigenvalue, in scaled units
    double scale = 1;       // RMS radius the points were divided by before solving
};

/// Centred ellipse fit. Throws InsufficientPoints (N < 4),
/// NoNonNegativeEigenvalue (no elliptic solution) or SingularNormalization.
ConicFit fit_centered_conic(std::span<const Point2> points);

/// Inclination of the major semi-axis, in [0, pi). Zero when v2 = v3 = 0.
double extract_angle(const ConicVector& q);

struct SemiAxes {
    double a = 0.0;
    double b = 0.0;
};

/// Throws NotAnEllipse when alpha >= 1 or beta <= 0.
SemiAxes extract_semiaxes(const ConicVector& q);

struct EllipseParams {
    double a = 0.0;
    double b = 0.0;
    double theta = 0.0;
};

/// Semi-axes and inclination; circles (alpha < circle_tol) report theta = 0.
EllipseParams extract_ellipse(const ConicVector& q, double circle_tol = kCircleTolerance);

struct LineParams {
    double angle = 0.0;
    double half_length = 0.0;
};

/// Total-least-squares line through the origin. Throws InsufficientPoints
/// (N < 2) or DegenerateCloud (all points coincide).
LineParams fit_line_tls(std::span<const Point2> points);

/// Maps an orientation angle into [0, pi).
double fold_half_turn(double angle);

}  // namespace gafault::gac
