#include "gafault/synth.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "gafault/error.hpp"

namespace gafault::synth {

namespace {

using cplx = std::complex<double>;
using Phasors = std::array<cplx, 3>;
using classify::FaultLabel;

Phasors balanced(const FaultScenario& scn) {
    constexpr double third = 2.0 * std::numbers::pi / 3.0;
    return {std::polar(scn.amplitude, scn.initial_phase),
            std::polar(scn.amplitude, scn.initial_phase - third),
            std::polar(scn.amplitude, scn.initial_phase + third)};
}

void pull_together(Phasors& v, std::size_t p, std::size_t q, double s, double phi) {
    const cplx mid = 0.5 * (v[p] + v[q]);
    const cplx factor = (1.0 - s) + s * std::sin(phi) * std::polar(1.0, phi);
    const cplx diff = factor * (v[p] - v[q]);
    v[p] = mid + 0.5 * diff;
    v[q] = mid - 0.5 * diff;
}

Phasors faulted(const FaultScenario& scn) {
    Phasors v = balanced(scn);
    const double k = 1.0 - scn.severity;
    switch (scn.label) {
        case FaultLabel::None: break;
        case FaultLabel::AG: v[0] *= k; break;
        case FaultLabel::BG: v[1] *= k; break;
        case FaultLabel::CG: v[2] *= k; break;
        case FaultLabel::ABG: v[0] *= k; v[1] *= k; break;
        case FaultLabel::BCG: v[1] *= k; v[2] *= k; break;
        case FaultLabel::CAG: v[2] *= k; v[0] *= k; break;
        case FaultLabel::AB: pull_together(v, 0, 1, scn.severity, scn.phase_shift); break;
        case FaultLabel::BC: pull_together(v, 1, 2, scn.severity, scn.phase_shift); break;
        case FaultLabel::CA: pull_together(v, 2, 0, scn.severity, scn.phase_shift); break;
        case FaultLabel::ABC: for (auto& x : v) x *= k; break;
    }
    return v;
}

ga3::Vector3 evaluate(const Phasors& v, double omega_t) {
    const cplx rot = std::polar(1.0, omega_t);
    return {(v[0] * rot).real(), (v[1] * rot).real(), (v[2] * rot).real()};
}

}  // namespace

void FaultScenario::validate() const {
    auto fail = [](const char* msg) { throw Error(ErrorCode::InvalidConfig, msg); };
    if (!(severity >= 0.0 && severity <= 1.0)) fail("severity must be in [0, 1]");
    if (!(f0 > 0.0)) fail("f0 must be positive");
    if (!(fs > 2.0 * f0)) fail("fs must exceed 2 x f0");
    if (!(amplitude > 0.0)) fail("amplitude must be positive");
    if (!(duration > 0.0)) fail("duration must be positive");
    if (!(noise_std >= 0.0)) fail("noise std must be non-negative");
    if (!std::isfinite(phase_shift) || !std::isfinite(fault_time) || !std::isfinite(initial_phase)) {
        fail("non-finite scenario parameter");
    }
}

ga3::Vector3 faulted_sample(const FaultScenario& scn, double t) {
    return evaluate(faulted(scn), 2.0 * std::numbers::pi * scn.f0 * t);
}

std::vector<pipeline::SampleFrame> generate(const FaultScenario& scn, std::uint64_t seed) {
    scn.validate();
    const Phasors pre = balanced(scn);
    const Phasors post = faulted(scn);
    const auto count = static_cast<std::size_t>(std::llround(scn.duration * scn.fs));
    const double omega = 2.0 * std::numbers::pi * scn.f0;

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, scn.noise_std * scn.amplitude);

    std::vector<pipeline::SampleFrame> frames(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double t = static_cast<double>(i) / scn.fs;
        const ga3::Vector3 x = evaluate(t >= scn.fault_time ? post : pre, omega * t);
        frames[i].t = t;
        frames[i].ch = {x.x1, x.x2, x.x3};
        if (scn.noise_std > 0.0) {
            for (double& c : frames[i].ch) c += noise(rng);
        }
    }
    return frames;
}

}  // namespace gafault::synth
