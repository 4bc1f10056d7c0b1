#include "gafault/ga3.hpp"

#include <algorithm>
#include <cmath>

#include "gafault/error.hpp"

namespace gafault::ga3 {

namespace {

struct Term {
    signed char sign;  // -1, 0 or +1
    unsigned char idx;
};

using Table = std::array<std::array<Term, kBasisSize>, kBasisSize>;

// blade_i * blade_j = sign * blade_idx, basis [1, s1, s2, s3, s12, s13, s23, s123].
constexpr Table kGeometric{{
    {{{+1, 0}, {+1, 1}, {+1, 2}, {+1, 3}, {+1, 4}, {+1, 5}, {+1, 6}, {+1, 7}}},
    {{{+1, 1}, {+1, 0}, {+1, 4}, {+1, 5}, {+1, 2}, {+1, 3}, {+1, 7}, {+1, 6}}},
    {{{+1, 2}, {-1, 4}, {+1, 0}, {+1, 6}, {-1, 1}, {-1, 7}, {+1, 3}, {-1, 5}}},
    {{{+1, 3}, {-1, 5}, {-1, 6}, {+1, 0}, {+1, 7}, {-1, 1}, {-1, 2}, {+1, 4}}},
    {{{+1, 4}, {-1, 2}, {+1, 1}, {+1, 7}, {-1, 0}, {-1, 6}, {+1, 5}, {-1, 3}}},
    {{{+1, 5}, {-1, 3}, {-1, 7}, {+1, 1}, {+1, 6}, {-1, 0}, {-1, 4}, {+1, 2}}},
    {{{+1, 6}, {+1, 7}, {-1, 3}, {+1, 2}, {-1, 5}, {+1, 4}, {-1, 0}, {-1, 1}}},
    {{{+1, 7}, {+1, 6}, {-1, 5}, {+1, 4}, {-1, 3}, {+1, 2}, {-1, 1}, {-1, 0}}},
}};

// Outer product: the grade-raising part of kGeometric, zero elsewhere.
constexpr Table kWedge{{
    {{{+1, 0}, {+1, 1}, {+1, 2}, {+1, 3}, {+1, 4}, {+1, 5}, {+1, 6}, {+1, 7}}},
    {{{+1, 1}, {0, 0}, {+1, 4}, {+1, 5}, {0, 0}, {0, 0}, {+1, 7}, {0, 0}}},
    {{{+1, 2}, {-1, 4}, {0, 0}, {+1, 6}, {0, 0}, {-1, 7}, {0, 0}, {0, 0}}},
    {{{+1, 3}, {-1, 5}, {-1, 6}, {0, 0}, {+1, 7}, {0, 0}, {0, 0}, {0, 0}}},
    {{{+1, 4}, {0, 0}, {0, 0}, {+1, 7}, {0, 0}, {0, 0}, {0, 0}, {0, 0}}},
    {{{+1, 5}, {0, 0}, {-1, 7}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}}},
    {{{+1, 6}, {+1, 7}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}}},
    {{{+1, 7}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}}},
}};

Multivector3 apply_table(const Table& table, const Multivector3& a, const Multivector3& b) {
    Multivector3 out;
    for (std::size_t i = 0; i < kBasisSize; ++i) {
        for (std::size_t j = 0; j < kBasisSize; ++j) {
            const Term t = table[i][j];
            out.c[t.idx] += t.sign * a.c[i] * b.c[j];
        }
    }
    return out;
}

constexpr double kInvSqrt3 = 0.57735026918962576451;

}  // namespace

Multivector3 operator+(const Multivector3& a, const Multivector3& b) {
    Multivector3 out;
    for (std::size_t i = 0; i < kBasisSize; ++i) out.c[i] = a.c[i] + b.c[i];
    return out;
}

Multivector3 operator-(const Multivector3& a, const Multivector3& b) {
    Multivector3 out;
    for (std::size_t i = 0; i < kBasisSize; ++i) out.c[i] = a.c[i] - b.c[i];
    return out;
}

Multivector3 operator-(const Multivector3& a) { return -1.0 * a; }

Multivector3 operator*(double k, const Multivector3& a) {
    Multivector3 out;
    for (std::size_t i = 0; i < kBasisSize; ++i) out.c[i] = k * a.c[i];
    return out;
}

Multivector3 geometric_product(const Multivector3& a, const Multivector3& b) {
    return apply_table(kGeometric, a, b);
}

Multivector3 wedge(const Multivector3& a, const Multivector3& b) {
    return apply_table(kWedge, a, b);
}

Multivector3 reverse(const Multivector3& m) {
    Multivector3 out = m;
    for (std::size_t i = 0; i < kBasisSize; ++i) {
        if (blade_grade(i) >= 2) out.c[i] = -out.c[i];
    }
    return out;
}

Multivector3 grade(const Multivector3& m, int k) {
    Multivector3 out;
    for (std::size_t i = 0; i < kBasisSize; ++i) {
        if (blade_grade(i) == k) out.c[i] = m.c[i];
    }
    return out;
}

double norm2(const Multivector3& m) {
    double s = 0.0;
    for (double x : m.c) s += x * x;
    return s;
}

double norm(const Multivector3& m) { return std::sqrt(norm2(m)); }

Multivector3 to_multivector(const Vector3& v) {
    Multivector3 m;
    m.c[blade::e1] = v.x1;
    m.c[blade::e2] = v.x2;
    m.c[blade::e3] = v.x3;
    return m;
}

Multivector3 to_multivector(const Bivector3& b) {
    Multivector3 m;
    m.c[blade::e12] = b.b12;
    m.c[blade::e13] = -b.b31;
    m.c[blade::e23] = b.b23;
    return m;
}

Multivector3 to_multivector(const Rotor3& r) {
    Multivector3 m = to_multivector(r.L);
    m.c[blade::e0] = r.s;
    return m;
}

Vector3 vector_part(const Multivector3& m) {
    return {m.c[blade::e1], m.c[blade::e2], m.c[blade::e3]};
}

Bivector3 bivector_part(const Multivector3& m) {
    return {m.c[blade::e12], m.c[blade::e23], -m.c[blade::e13]};
}

Vector3 operator+(const Vector3& a, const Vector3& b) {
    return {a.x1 + b.x1, a.x2 + b.x2, a.x3 + b.x3};
}
Vector3 operator-(const Vector3& a, const Vector3& b) {
    return {a.x1 - b.x1, a.x2 - b.x2, a.x3 - b.x3};
}
Vector3 operator*(double k, const Vector3& v) { return {k * v.x1, k * v.x2, k * v.x3}; }
double dot(const Vector3& a, const Vector3& b) { return a.x1 * b.x1 + a.x2 * b.x2 + a.x3 * b.x3; }
double norm(const Vector3& v) { return std::sqrt(dot(v, v)); }

Bivector3 operator+(const Bivector3& a, const Bivector3& b) {
    return {a.b12 + b.b12, a.b23 + b.b23, a.b31 + b.b31};
}
Bivector3 operator-(const Bivector3& a) { return {-a.b12, -a.b23, -a.b31}; }
Bivector3 operator*(double k, const Bivector3& b) { return {k * b.b12, k * b.b23, k * b.b31}; }

double magnitude(const Bivector3& b) { return std::sqrt(dot(b, b)); }

Bivector3 normalized(const Bivector3& b) {
    const double m = magnitude(b);
    if (m == 0.0) throw Error(ErrorCode::ZeroBivector, "cannot normalize a zero bivector");
    return (1.0 / m) * b;
}

double dot(const Bivector3& a, const Bivector3& b) {
    return a.b12 * b.b12 + a.b23 * b.b23 + a.b31 * b.b31;
}

Bivector3 wedge(const Vector3& a, const Vector3& b) {
    return bivector_part(wedge(to_multivector(a), to_multivector(b)));
}

BivectorProducts bivector_products(const Bivector3& a, const Bivector3& b) {
    const Multivector3 ma = to_multivector(a);
    const Multivector3 mb = to_multivector(b);
    const Multivector3 ab = geometric_product(ma, mb);
    const Multivector3 ba = geometric_product(mb, ma);
    BivectorProducts out;
    out.contraction = ab.c[blade::e0];
    out.commutator = bivector_part(0.5 * (ab - ba));
    // G3 has no grade-4 blades.
    out.grade4 = 0.0;
    return out;
}

Rotor3 rotor_from_multivector(const Multivector3& m) {
    return {m.c[blade::e0], bivector_part(m)};
}

Rotor3 rotor_between_bivectors(const Bivector3& a, const Bivector3& b) {
    const Multivector3 m = Multivector3::scalar(1.0) +
                           geometric_product(to_multivector(a), reverse(to_multivector(b)));
    const double n = norm(m);
    if (n < 1e-9) {
        throw Error(ErrorCode::AntiparallelPlanes, "rotor undefined for opposite planes");
    }
    return rotor_from_multivector((1.0 / n) * m);
}

Multivector3 sandwich(const Rotor3& r, const Multivector3& m) {
    const Multivector3 mr = to_multivector(r);
    return geometric_product(geometric_product(mr, m), reverse(mr));
}

Vector3 sandwich(const Rotor3& r, const Vector3& v) {
    return vector_part(sandwich(r, to_multivector(v)));
}

Bivector3 sandwich(const Rotor3& r, const Bivector3& b) {
    return bivector_part(sandwich(r, to_multivector(b)));
}

Bivector3 unit_kirchhoff() { return {kInvSqrt3, kInvSqrt3, kInvSqrt3}; }

double kirchhoff_deviation(const Bivector3& b, double scale) {
    const double m = magnitude(b);
    if (m < 1e-9 * scale) {
        throw Error(ErrorCode::ZeroBivector, "bivector too small for a plane angle");
    }
    // B̂ ⌋ K̂† reduces to the component dot product.
    const double c = std::clamp(dot(b, unit_kirchhoff()) / m, -1.0, 1.0);
    return std::acos(c);
}

}  // namespace gafault::ga3
