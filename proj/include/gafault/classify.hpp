#pragma once

#include <array>
#include <numbers>
#include <optional>
#include <string_view>

#include "gafault/pipeline.hpp"

namespace gafault::classify {

enum class FaultLabel { None, AG, BG, CG, ABG, BCG, CAG, AB, BC, CA, ABC };

inline constexpr std::array<FaultLabel, 10> kFaultTypes{
    FaultLabel::AG,  FaultLabel::BG,  FaultLabel::CG, FaultLabel::ABG, FaultLabel::BCG,
    FaultLabel::CAG, FaultLabel::AB, FaultLabel::BC, FaultLabel::CA,  FaultLabel::ABC};

std::string_view to_string(FaultLabel label);
/// Accepts the names above case-insensitively, plus "none". Throws InvalidConfig.
FaultLabel parse_label(std::string_view text);

enum class FaultFamily { None, LineGround, LineLineGround, LineLine, ThreePhase };
FaultFamily family(FaultLabel label);

struct ClassifierConfig {
    /// Minimum deviation of a bnorm component from 1/sqrt(3) for a ground fault,
    /// on a well-conditioned plane estimate.
    double ground_epsilon = 0.01;
    /// Relative radius drop below nominal that turns a circle into a three-phase fault.
    double circle_rel_tol = 1e-2;
    /// Ellipses with (a - b)/a below this are treated as circles of radius (a + b)/2.
    double roundness_tol = 0.05;
    /// Largest angular distance (in the tangent plane at the Kirchhoff point)
    /// between a bnorm deviation and its nearest ground template.
    double template_angle_tol = 20.0 * std::numbers::pi / 180.0;
    /// Both the ground gate and the roundness threshold are raised to at
    /// least this many multiples of the window's noise-to-signal ratio.
    double noise_sigmas = 4.0;
    /// Sector boundaries: [b0, b1) -> AB, [b1, b2) -> CA, otherwise BC.
    std::array<double, 3> sector_bounds{std::numbers::pi / 12.0, 5.0 * std::numbers::pi / 12.0,
                                        3.0 * std::numbers::pi / 4.0};

    /// Throws InvalidConfig.
    void validate() const;
};

struct SeverityModel {
    /// Nominal phase RMS, signal units.
    double phase_rms = std::numbers::sqrt2 / 2.0;

    static SeverityModel from_peak(double peak) { return {peak / std::numbers::sqrt2}; }
    /// Radius of the balanced circle, sqrt(3) * A.
    double nominal_radius() const { return std::numbers::sqrt3 * phase_rms; }
};

struct GroundDecision {
    /// nullopt: no ground pattern (the plane sits on the Kirchhoff plane).
    std::optional<FaultLabel> label;
    bool ambiguous = false;
};

/// Ground-fault pattern from the normalized bivector components (s12, s23, s31).
/// conditioning in (0, 1] widens the deviation gate for poorly pinned planes;
/// noise_ratio (noise std over signal RMS) raises its floor.
GroundDecision classify_ground(const std::array<double, 3>& bnorm, const ClassifierConfig& cfg,
                               double conditioning = 1.0, double noise_ratio = 0.0);

/// Healthy / three-phase / line-to-line decision from the fitted shape.
FaultLabel classify_by_shape(const pipeline::Shape& shape, const ClassifierConfig& cfg,
                             const SeverityModel& model, double noise_ratio = 0.0);

/// Linear severity map onto [0, 1].
double estimate_severity(FaultLabel label, const pipeline::Shape& shape, const SeverityModel& model);

struct Evidence {
    std::array<double, 3> bnorm{};
    pipeline::Shape shape{pipeline::Circle{}};
    double deviation = 0.0;  // angle to the Kirchhoff plane, radians
    bool ambiguous = false;
};

struct FaultReport {
    FaultLabel label = FaultLabel::None;
    std::optional<double> severity;
    Evidence evidence;
};

FaultReport classify(const pipeline::WindowAnalysis& analysis, const ClassifierConfig& cfg,
                     const SeverityModel& model);

}  // namespace gafault::classify
