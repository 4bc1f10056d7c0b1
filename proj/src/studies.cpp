#include "gafault/studies.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "gafault/error.hpp"
#include "gafault/ga3.hpp"
#include "gafault/gac.hpp"

namespace gafault::synth {

namespace {

constexpr double kPi = std::numbers::pi;

ga3::Vector3 balanced_unit(double psi) {
    return {std::cos(psi), std::cos(psi - 2.0 * kPi / 3.0), std::cos(psi + 2.0 * kPi / 3.0)};
}

std::array<double, 3> abs_unit(const ga3::Bivector3& b) {
    const double m = ga3::magnitude(b);
    if (m == 0.0) return {0.0, 0.0, 0.0};
    return {std::abs(b.b12) / m, std::abs(b.b23) / m, std::abs(b.b31) / m};
}

double fit_trial_error(const std::vector<gac::Point2>& pts, const CanonicalEllipse& e) {
    try {
        const gac::ConicFit fit = gac::fit_centered_conic(pts);
        const gac::EllipseParams p = gac::extract_ellipse(fit.conic);
        double dtheta = std::abs(p.theta - e.theta);
        dtheta = std::min(dtheta, kPi - dtheta);
        const double err =
            (std::abs(p.a - e.a) / e.a + std::abs(p.b - e.b) / e.b + dtheta / e.theta) / 3.0;
        return std::isfinite(err) ? std::min(err, 1.0) : 1.0;
    } catch (const Error&) {
        return 1.0;
    }
}

}  // namespace

std::vector<double> default_study_angles() {
    std::vector<double> out;
    for (int k = 1; k < 64; ++k) out.push_back(k * kPi / 32.0);
    return out;
}

std::vector<double> default_arc_fractions() {
    std::vector<double> out;
    for (int k = 1; k <= 20; ++k) out.push_back(0.05 * k);
    return out;
}

BivectorStudy bivector_error_study(const std::vector<double>& noise_levels, int trials,
                                   std::uint64_t seed, const std::vector<double>& angles) {
    if (trials < 1) throw Error(ErrorCode::InvalidConfig, "trials must be >= 1");
    BivectorStudy out;
    out.angles = angles;
    out.noise_levels = noise_levels;
    out.error.assign(angles.size(), std::vector<double>(noise_levels.size(), 0.0));

    for (int t = 0; t < trials; ++t) {
        // Same start phase and standard-normal draws for every angle and
        // noise level within a trial.
        std::mt19937_64 rng(seed + static_cast<std::uint64_t>(t));
        std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
        std::normal_distribution<double> gauss(0.0, 1.0);
        const double psi = phase(rng);
        std::array<double, 6> z{};
        for (double& v : z) v = gauss(rng);

        const ga3::Vector3 x1 = balanced_unit(psi);
        for (std::size_t a = 0; a < angles.size(); ++a) {
            const ga3::Vector3 x2 = balanced_unit(psi + angles[a]);
            const auto truth = abs_unit(ga3::wedge(x1, x2));
            const double truth_norm = std::hypot(truth[0], truth[1], truth[2]);
            for (std::size_t j = 0; j < noise_levels.size(); ++j) {
                const double s = noise_levels[j];
                const ga3::Vector3 n1 = x1 + s * ga3::Vector3{z[0], z[1], z[2]};
                const ga3::Vector3 n2 = x2 + s * ga3::Vector3{z[3], z[4], z[5]};
                const auto est = abs_unit(ga3::wedge(n1, n2));
                const double diff =
                    std::hypot(est[0] - truth[0], est[1] - truth[1], est[2] - truth[2]);
                out.error[a][j] += truth_norm > 0.0 ? diff / truth_norm : 1.0;
            }
        }
    }
    for (auto& row : out.error) {
        for (double& e : row) e /= trials;
    }
    return out;
}

FitStudy fit_error_study(const std::vector<double>& noise_levels,
                         const std::vector<double>& arc_fractions, int trials, std::uint64_t seed,
                         int samples_per_cycle, CanonicalEllipse ellipse) {
    if (trials < 1) throw Error(ErrorCode::InvalidConfig, "trials must be >= 1");
    for (double f : arc_fractions) {
        if (!(f > 0.0 && f <= 1.0)) throw Error(ErrorCode::InvalidConfig, "arc fraction outside (0, 1]");
    }
    FitStudy out;
    out.fractions = arc_fractions;
    out.noise_levels = noise_levels;
    out.error.assign(arc_fractions.size(), std::vector<double>(noise_levels.size(), 0.0));

    const double c = std::cos(ellipse.theta);
    const double s = std::sin(ellipse.theta);
    const auto max_points = static_cast<std::size_t>(samples_per_cycle);

    std::vector<gac::Point2> pts;
    for (int t = 0; t < trials; ++t) {
        std::mt19937_64 rng(seed + static_cast<std::uint64_t>(t));
        std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
        std::normal_distribution<double> gauss(0.0, 1.0);
        const double psi0 = phase(rng);
        // Shared noise prefix: a longer arc extends a shorter one.
        std::vector<std::array<double, 2>> z(max_points);
        for (auto& v : z) v = {gauss(rng), gauss(rng)};

        for (std::size_t f = 0; f < arc_fractions.size(); ++f) {
            const std::size_t n = std::clamp<std::size_t>(
                static_cast<std::size_t>(std::lround(arc_fractions[f] * samples_per_cycle)), 5,
                max_points);
            for (std::size_t j = 0; j < noise_levels.size(); ++j) {
                pts.clear();
                for (std::size_t i = 0; i < n; ++i) {
                    const double psi = psi0 + 2.0 * kPi * static_cast<double>(i) / samples_per_cycle;
                    const double u = ellipse.a * std::cos(psi);
                    const double v = ellipse.b * std::sin(psi);
                    pts.push_back({c * u - s * v + noise_levels[j] * z[i][0],
                                   s * u + c * v + noise_levels[j] * z[i][1]});
                }
                out.error[f][j] += fit_trial_error(pts, ellipse);
            }
        }
    }
    for (auto& row : out.error) {
        for (double& e : row) e /= trials;
    }
    return out;
}

}  // namespace gafault::synth
