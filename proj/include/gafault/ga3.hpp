#pragma once

// Euclidean geometric algebra G3 with signature (3,0,0).
//
// Multivector coefficients are stored by graded basis
//   [1, s1, s2, s3, s12, s13, s23, s123]
// Bivector3 exposes the cyclic order (s12, s23, s31) instead, which is the
// order the fault tables are written in; s31 = -s13.

#include <array>
#include <cstddef>

namespace gafault::ga3 {

inline constexpr std::size_t kBasisSize = 8;

struct Multivector3 {
    std::array<double, kBasisSize> c{};

    static constexpr Multivector3 scalar(double s) { return {{s, 0, 0, 0, 0, 0, 0, 0}}; }
    static constexpr Multivector3 basis(std::size_t i) {
        Multivector3 m;
        m.c[i] = 1.0;
        return m;
    }

    constexpr double operator[](std::size_t i) const { return c[i]; }
    constexpr double& operator[](std::size_t i) { return c[i]; }

    friend constexpr bool operator==(const Multivector3&, const Multivector3&) = default;
};

// Named basis indices.
namespace blade {
inline constexpr std::size_t e0 = 0;
inline constexpr std::size_t e1 = 1;
inline constexpr std::size_t e2 = 2;
inline constexpr std::size_t e3 = 3;
inline constexpr std::size_t e12 = 4;
inline constexpr std::size_t e13 = 5;
inline constexpr std::size_t e23 = 6;
inline constexpr std::size_t e123 = 7;
}  // namespace blade

/// Grade of basis blade i.
constexpr int blade_grade(std::size_t i) {
    constexpr std::array<int, kBasisSize> g{0, 1, 1, 1, 2, 2, 2, 3};
    return g[i];
}

struct Vector3 {
    double x1 = 0.0;
    double x2 = 0.0;
    double x3 = 0.0;

    friend constexpr bool operator==(const Vector3&, const Vector3&) = default;
};

struct Bivector3 {
    double b12 = 0.0;
    double b23 = 0.0;
    double b31 = 0.0;

    friend constexpr bool operator==(const Bivector3&, const Bivector3&) = default;
};

struct Rotor3 {
    double s = 1.0;
    Bivector3 L{};
};

// Arithmetic.
Multivector3 operator+(const Multivector3& a, const Multivector3& b);
Multivector3 operator-(const Multivector3& a, const Multivector3& b);
Multivector3 operator-(const Multivector3& a);
Multivector3 operator*(double k, const Multivector3& a);

/// Full Clifford product.
Multivector3 geometric_product(const Multivector3& a, const Multivector3& b);
/// Outer (Grassmann) product.
Multivector3 wedge(const Multivector3& a, const Multivector3& b);
/// Negates grades 2 and 3.
Multivector3 reverse(const Multivector3& m);
/// <m>_k; grades outside 0..3 give zero.
Multivector3 grade(const Multivector3& m, int k);

double norm2(const Multivector3& m);
double norm(const Multivector3& m);

// Embeddings and projections.
Multivector3 to_multivector(const Vector3& v);
Multivector3 to_multivector(const Bivector3& b);
Multivector3 to_multivector(const Rotor3& r);
Vector3 vector_part(const Multivector3& m);
Bivector3 bivector_part(const Multivector3& m);

Vector3 operator+(const Vector3& a, const Vector3& b);
Vector3 operator-(const Vector3& a, const Vector3& b);
Vector3 operator*(double k, const Vector3& v);
double dot(const Vector3& a, const Vector3& b);
double norm(const Vector3& v);

Bivector3 operator+(const Bivector3& a, const Bivector3& b);
Bivector3 operator-(const Bivector3& a);
Bivector3 operator*(double k, const Bivector3& b);
double magnitude(const Bivector3& b);
/// Throws ZeroBivector for a zero bivector.
Bivector3 normalized(const Bivector3& b);
/// Euclidean dot of the components; equals A ⌋ B† for bivectors.
double dot(const Bivector3& a, const Bivector3& b);

/// a ∧ b for two vectors, in cyclic components.
Bivector3 wedge(const Vector3& a, const Vector3& b);

struct BivectorProducts {
    double contraction = 0.0;  // <AB>_0
    Bivector3 commutator{};    // <AB>_2 = (AB - BA)/2
    double grade4 = 0.0;       // <AB>_4, identically zero in G3
};

BivectorProducts bivector_products(const Bivector3& a, const Bivector3& b);

/// Unit rotor R with R b R† = a, built as (1 + a b†)/|1 + a b†|.
/// Throws AntiparallelPlanes when a ≈ -b.
Rotor3 rotor_between_bivectors(const Bivector3& a, const Bivector3& b);

Rotor3 rotor_from_multivector(const Multivector3& m);

/// R m R†.
Multivector3 sandwich(const Rotor3& r, const Multivector3& m);
Vector3 sandwich(const Rotor3& r, const Vector3& v);
Bivector3 sandwich(const Rotor3& r, const Bivector3& b);

/// Kirchhoff plane bivector s12 + s23 + s31 (normal 1,1,1).
constexpr Bivector3 kirchhoff() { return {1.0, 1.0, 1.0}; }
Bivector3 unit_kirchhoff();
constexpr Bivector3 plane_e12() { return {1.0, 0.0, 0.0}; }

/// Angle between B and the Kirchhoff plane, in [0, pi].
/// Throws ZeroBivector when |B| < 1e-9 * scale.
double kirchhoff_deviation(const Bivector3& b, double scale = 1.0);

}  // namespace gafault::ga3
