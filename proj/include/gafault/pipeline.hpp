#pragma once

// Sliding-window trajectory analysis: for each window of three-phase
// samples, estimate the trajectory plane, rotate it onto s12 and fit either
// a centred ellipse or, when the plane collapses, a line.

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "gafault/ga3.hpp"
#include "gafault/gac.hpp"

namespace gafault::pipeline {

struct SampleFrame {
    double t = 0.0;
    std::array<double, 3> ch{};
};

struct WindowConfig {
    double f0 = 50.0;
    double fs = 10000.0;
    double window_fraction = 0.25;
    std::size_t hop = 1;
    double degenerate_ratio = 1e-3;
    /// Trailing moving-average width in samples; 0 or 1 disables smoothing.
    std::size_t smoothing_width = 0;
    /// When set, samples are divided by this peak amplitude (per-unit).
    std::optional<double> nominal_peak;
    /// Worker threads for analyze_record; 0 picks hardware concurrency.
    unsigned threads = 0;

    /// Samples per window.
    std::size_t window_length() const;
    /// Throws InvalidConfig.
    void validate() const;
};

struct Circle {
    double radius = 0.0;
};

using Shape = std::variant<gac::EllipseParams, gac::LineParams, Circle>;

struct WindowAnalysis {
    double t_start = 0.0;
    double t_end = 0.0;
    ga3::Bivector3 bivector{};        // raw x1 ^ xn
    std::array<double, 3> bnorm{};    // |unit bivector| in (s12, s23, s31) order
    Shape shape{Circle{}};
    bool degenerate = false;
    /// |x1 ^ xn| / max(|x1|, |xn|)^2: how well the window pins down its plane.
    double plane_conditioning = 0.0;
    /// RMS of |x| over the window.
    double signal_rms = 0.0;
    /// Per-channel white-noise std estimated from second differences.
    double noise_rms = 0.0;
};

/// x1 ^ xn over the window.
ga3::Bivector3 window_bivector(std::span<const ga3::Vector3> window);

/// Rotates the window so the plane of b lies on s12 and returns (s1, s2)
/// coordinates. On AntiparallelPlanes retries once with x2 ^ xn.
std::vector<gac::Point2> reduce_to_plane(std::span<const ga3::Vector3> window,
                                         const ga3::Bivector3& b);

/// Same, with an explicit rotor; also reports the largest out-of-plane
/// residual relative to the sample norm.
std::vector<gac::Point2> rotate_to_plane(std::span<const ga3::Vector3> window,
                                         const ga3::Rotor3& rotor,
                                         double* max_out_of_plane = nullptr);

WindowAnalysis analyze_window(std::span<const ga3::Vector3> window, const WindowConfig& cfg,
                              double t_start = 0.0, double t_end = 0.0);

/// Throws NonUniformSampling when any step deviates more than 1% from 1/fs.
std::vector<WindowAnalysis> analyze_record(std::span<const SampleFrame> frames,
                                           const WindowConfig& cfg);

/// Trailing moving average of the given width, applied per channel.
std::vector<SampleFrame> smooth(std::span<const SampleFrame> frames, std::size_t width);

}  // namespace gafault::pipeline
