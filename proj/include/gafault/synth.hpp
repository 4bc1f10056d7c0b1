#pragma once

// Synthetic three-phase records with steady faults switched in at a given
// instant. Fault models act on phasors:
//   L-G   faulted phase scaled by (1 - s)
//   L-L   faulted pair pulled toward its midpoint; the pair difference is
//         scaled by (1 - s), or by the complex factor
//         (1 - s) + s sin(phi) e^{j phi} when a phase shift phi is given
//   L-L-G both faulted phases scaled by (1 - s)
//   L-L-L all phases scaled by (1 - s)
// followed by i.i.d. Gaussian noise per channel.

#include <cstdint>
#include <vector>

#include "gafault/classify.hpp"
#include "gafault/pipeline.hpp"

namespace gafault::synth {

struct FaultScenario {
    classify::FaultLabel label = classify::FaultLabel::None;
    double severity = 0.0;
    /// Radians; 0 is a purely resistive fault path. Used by line-to-line faults.
    double phase_shift = 0.0;
    double fault_time = 0.1;
    double f0 = 50.0;
    double amplitude = 1.0;  // peak
    double duration = 0.2;
    double fs = 10000.0;
    double noise_std = 0.0;  // fraction of amplitude
    /// Phase-A angle at t = 0.
    double initial_phase = 0.0;

    /// Throws InvalidConfig.
    void validate() const;
};

std::vector<pipeline::SampleFrame> generate(const FaultScenario& scn, std::uint64_t seed);

/// Steady-state post-fault sample at time t, without noise.
ga3::Vector3 faulted_sample(const FaultScenario& scn, double t);

}  // namespace gafault::synth
