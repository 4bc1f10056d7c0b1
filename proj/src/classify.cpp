#include "gafault/classify.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "gafault/error.hpp"

namespace gafault::classify {

namespace {

constexpr double kInvSqrt3 = 0.57735026918962576451;

// Ground patterns on the unit sphere leave the Kirchhoff point along six
// rays in its tangent plane: one component up and the other two down
// equally (single line to ground), or the reverse (double line to ground).
// Indexed by the odd component in (s12, s23, s31) order.
constexpr std::array<FaultLabel, 3> kSingleByMax{FaultLabel::CG, FaultLabel::AG, FaultLabel::BG};
constexpr std::array<FaultLabel, 3> kDoubleByMin{FaultLabel::ABG, FaultLabel::BCG, FaultLabel::CAG};

struct Axes {
    double a;
    double b;
};

Axes axes_of(const pipeline::Shape& shape) {
    if (const auto* c = std::get_if<pipeline::Circle>(&shape)) return {c->radius, c->radius};
    if (const auto* e = std::get_if<gac::EllipseParams>(&shape)) return {e->a, e->b};
    const auto& l = std::get<gac::LineParams>(shape);
    return {l.half_length, 0.0};
}

FaultLabel sector_label(double theta, const ClassifierConfig& cfg) {
    const double t = gac::fold_half_turn(theta);
    const auto& b = cfg.sector_bounds;
    if (t >= b[0] && t < b[1]) return FaultLabel::AB;
    if (t >= b[1] && t < b[2]) return FaultLabel::CA;
    // B-C wraps through pi -> 0.
    return FaultLabel::BC;
}

FaultLabel circle_label(double radius, const ClassifierConfig& cfg, const SeverityModel& model) {
    return radius >= (1.0 - cfg.circle_rel_tol) * model.nominal_radius() ? FaultLabel::None
                                                                         : FaultLabel::ABC;
}

}  // namespace

std::string_view to_string(FaultLabel label) {
    switch (label) {
        case FaultLabel::None: return "None";
        case FaultLabel::AG: return "AG";
        case FaultLabel::BG: return "BG";
        case FaultLabel::CG: return "CG";
        case FaultLabel::ABG: return "ABG";
        case FaultLabel::BCG: return "BCG";
        case FaultLabel::CAG: return "CAG";
        case FaultLabel::AB: return "AB";
        case FaultLabel::BC: return "BC";
        case FaultLabel::CA: return "CA";
        case FaultLabel::ABC: return "ABC";
    }
    return "None";
}

FaultLabel parse_label(std::string_view text) {
    std::string up(text);
    std::transform(up.begin(), up.end(), up.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
    up.erase(std::remove(up.begin(), up.end(), '-'), up.end());
    if (up == "NONE") return FaultLabel::None;
    for (FaultLabel l : kFaultTypes) {
        if (up == to_string(l)) return l;
    }
    throw Error(ErrorCode::InvalidConfig, "unknown fault label '" + std::string(text) + "'");
}

FaultFamily family(FaultLabel label) {
    switch (label) {
        case FaultLabel::AG:
        case FaultLabel::BG:
        case FaultLabel::CG: return FaultFamily::LineGround;
        case FaultLabel::ABG:
        case FaultLabel::BCG:
        case FaultLabel::CAG: return FaultFamily::LineLineGround;
        case FaultLabel::AB:
        case FaultLabel::BC:
        case FaultLabel::CA: return FaultFamily::LineLine;
        case FaultLabel::ABC: return FaultFamily::ThreePhase;
        case FaultLabel::None: break;
    }
    return FaultFamily::None;
}

void ClassifierConfig::validate() const {
    if (!(ground_epsilon > 0.0 && ground_epsilon < 0.1)) {
        throw Error(ErrorCode::InvalidConfig, "ground epsilon must be in (0, 0.1)");
    }
    if (!(circle_rel_tol >= 0.0 && circle_rel_tol < 1.0)) {
        throw Error(ErrorCode::InvalidConfig, "circle tolerance must be in [0, 1)");
    }
    if (!(roundness_tol >= 0.0 && roundness_tol < 1.0)) {
        throw Error(ErrorCode::InvalidConfig, "roundness tolerance must be in [0, 1)");
    }
    if (!(noise_sigmas >= 0.0 && std::isfinite(noise_sigmas))) {
        throw Error(ErrorCode::InvalidConfig, "noise multiplier must be non-negative");
    }
    const auto& b = sector_bounds;
    if (!(b[0] >= 0.0 && b[0] < b[1] && b[1] < b[2] && b[2] < std::numbers::pi)) {
        throw Error(ErrorCode::InvalidConfig, "sector bounds must increase within [0, pi)");
    }
}

GroundDecision classify_ground(const std::array<double, 3>& bnorm, const ClassifierConfig& cfg,
                               double conditioning, double noise_ratio) {
    std::array<double, 3> d{};
    double dev = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        d[i] = bnorm[i] - kInvSqrt3;
        dev = std::max(dev, std::abs(d[i]));
    }
    if (!(conditioning > 0.0)) return {};
    const double floor = std::max(cfg.ground_epsilon, cfg.noise_sigmas * noise_ratio);
    const double gate = floor / std::min(conditioning, 1.0);
    if (dev < gate) return {};

    // Tangent-plane part of the deviation.
    const double mean = (d[0] + d[1] + d[2]) / 3.0;
    for (double& x : d) x -= mean;

    double best_angle = std::numbers::pi;
    FaultLabel best = FaultLabel::None;
    for (std::size_t k = 0; k < 3; ++k) {
        const std::size_t i = (k + 1) % 3;
        const std::size_t j = (k + 2) % 3;
        const double along = (2.0 * d[k] - d[i] - d[j]) / std::sqrt(6.0);
        const double across = std::abs(d[i] - d[j]) / std::sqrt(2.0);
        const double up = std::atan2(across, along);
        const double down = std::numbers::pi - up;
        if (up < best_angle) {
            best_angle = up;
            best = kSingleByMax[k];
        }
        if (down < best_angle) {
            best_angle = down;
            best = kDoubleByMin[k];
        }
    }
    if (best_angle > cfg.template_angle_tol) return {std::nullopt, true};
    return {best, false};
}

FaultLabel classify_by_shape(const pipeline::Shape& shape, const ClassifierConfig& cfg,
                             const SeverityModel& model, double noise_ratio) {
    if (const auto* c = std::get_if<pipeline::Circle>(&shape)) {
        return circle_label(c->radius, cfg, model);
    }
    if (const auto* e = std::get_if<gac::EllipseParams>(&shape)) {
        const double round = std::max(cfg.roundness_tol, cfg.noise_sigmas * noise_ratio);
        if (e->a > 0.0 && (e->a - e->b) / e->a < round) {
            return circle_label(0.5 * (e->a + e->b), cfg, model);
        }
        return sector_label(e->theta, cfg);
    }
    const auto& l = std::get<gac::LineParams>(shape);
    // A line of no extent is a collapse of all three phases.
    if (l.half_length == 0.0) return FaultLabel::ABC;
    return sector_label(l.angle, cfg);
}

double estimate_severity(FaultLabel label, const pipeline::Shape& shape, const SeverityModel& model) {
    const double nominal = model.nominal_radius();
    const Axes ax = axes_of(shape);
    double s = 0.0;
    switch (family(label)) {
        case FaultFamily::LineLine:
        case FaultFamily::LineLineGround:
            s = 1.0 - ax.b / nominal;
            break;
        case FaultFamily::ThreePhase: {
            // Mean radius: equals a on an exact circle and is less biased on
            // the slightly eccentric fits noise produces.
            const double r = std::holds_alternative<gac::EllipseParams>(shape) ? 0.5 * (ax.a + ax.b) : ax.a;
            s = 1.0 - r / nominal;
            break;
        }
        case FaultFamily::LineGround:
            s = (nominal - ax.b) / ((std::numbers::sqrt3 - 1.0) * model.phase_rms);
            break;
        case FaultFamily::None:
            throw Error(ErrorCode::InvalidConfig, "no severity for a healthy window");
    }
    return std::clamp(s, 0.0, 1.0);
}

FaultReport classify(const pipeline::WindowAnalysis& analysis, const ClassifierConfig& cfg,
                     const SeverityModel& model) {
    FaultReport report;
    report.evidence.bnorm = analysis.bnorm;
    report.evidence.shape = analysis.shape;
    const double k_dot = (analysis.bnorm[0] + analysis.bnorm[1] + analysis.bnorm[2]) * kInvSqrt3;
    report.evidence.deviation = std::acos(std::clamp(k_dot, -1.0, 1.0));

    const double conditioning = analysis.degenerate ? 1.0 : analysis.plane_conditioning;
    const double noise_ratio =
        analysis.signal_rms > 0.0 ? analysis.noise_rms / analysis.signal_rms : 0.0;
    const GroundDecision ground = classify_ground(analysis.bnorm, cfg, conditioning, noise_ratio);
    if (ground.ambiguous) {
        report.evidence.ambiguous = true;
        return report;
    }
    report.label = ground.label ? *ground.label : classify_by_shape(analysis.shape, cfg, model, noise_ratio);
    if (report.label != FaultLabel::None) {
        report.severity = estimate_severity(report.label, analysis.shape, model);
    }
    return report;
}

}  // namespace gafault::classify
