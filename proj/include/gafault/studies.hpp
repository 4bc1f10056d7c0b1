#pragma once

// Monte-Carlo error studies: bivector estimation error versus the angle
// between the two wedge operands, and ellipse-fit error versus the fraction
// of a cycle available to the fit.

#include <cstdint>
#include <vector>

namespace gafault::synth {

inline const std::vector<double> kStudyNoiseLevels{0.001, 0.01, 0.02, 0.05, 0.10};

struct BivectorStudy {
    std::vector<double> angles;        // electrical separation, radians
    std::vector<double> noise_levels;  // std as a fraction of peak amplitude
    /// error[angle][noise]: mean of |bnorm_est - bnorm_true| / |bnorm_true|.
    std::vector<std::vector<double>> error;
};

/// Angles k*pi/32 for k = 1..63.
std::vector<double> default_study_angles();

BivectorStudy bivector_error_study(const std::vector<double>& noise_levels, int trials,
                                   std::uint64_t seed,
                                   const std::vector<double>& angles = default_study_angles());

struct FitStudy {
    std::vector<double> fractions;     // of one cycle, (0, 1]
    std::vector<double> noise_levels;
    /// error[fraction][noise]: mean relative error of (a, b, theta), capped at 1 per trial.
    std::vector<std::vector<double>> error;
};

/// 5%, 10%, ..., 100%.
std::vector<double> default_arc_fractions();

struct CanonicalEllipse {
    double a = 1.224744871391589;   // sqrt(1.5)
    double b = 0.7348469228349535;  // 0.6 sqrt(1.5)
    double theta = 0.7853981633974483;
};

FitStudy fit_error_study(const std::vector<double>& noise_levels,
                         const std::vector<double>& arc_fractions, int trials, std::uint64_t seed,
                         int samples_per_cycle = 200, CanonicalEllipse ellipse = {});

}  // namespace gafault::synth
