#pragma once

// Hand-rolled random generators for property tests.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "gafault/ga3.hpp"
#include "gafault/gac.hpp"

namespace gen {

struct Rng {
    std::mt19937_64 eng;
    explicit Rng(std::uint64_t seed) : eng(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng); }
    double normal() { return std::normal_distribution<double>(0.0, 1.0)(eng); }

    gafault::ga3::Multivector3 multivector() {
        gafault::ga3::Multivector3 m;
        for (double& c : m.c) c = uniform(-2.0, 2.0);
        return m;
    }
    gafault::ga3::Vector3 vector() { return {normal(), normal(), normal()}; }
    gafault::ga3::Bivector3 bivector() { return {normal(), normal(), normal()}; }
    gafault::ga3::Bivector3 unit_bivector() {
        while (true) {
            const auto b = bivector();
            if (gafault::ga3::magnitude(b) > 1e-3) return gafault::ga3::normalized(b);
        }
    }
};

struct Ellipse {
    double a, b, theta;
};

inline Ellipse ellipse(Rng& r, double min_ratio = 0.05, double max_ratio = 0.9) {
    const double a = r.uniform(0.2, 5.0);
    return {a, a * r.uniform(min_ratio, max_ratio), r.uniform(0.0, std::numbers::pi)};
}

/// n samples over the given fraction of a turn, starting at phase psi0.
inline std::vector<gafault::gac::Point2> arc(const Ellipse& e, double psi0, double fraction, int n) {
    std::vector<gafault::gac::Point2> pts;
    const double c = std::cos(e.theta), s = std::sin(e.theta);
    for (int k = 0; k < n; ++k) {
        const double psi = psi0 + 2.0 * std::numbers::pi * fraction * k / (n - 1);
        const double u = e.a * std::cos(psi), v = e.b * std::sin(psi);
        pts.push_back({c * u - s * v, s * u + c * v});
    }
    return pts;
}

}  // namespace gen
