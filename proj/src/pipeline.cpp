#include "gafault/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>
#include <thread>

#include "gafault/error.hpp"

namespace gafault::pipeline {

namespace {

using ga3::Bivector3;
using ga3::Vector3;

Vector3 to_vector(const SampleFrame& f) { return {f.ch[0], f.ch[1], f.ch[2]}; }

const ga3::Rotor3& kirchhoff_rotor() {
    static const ga3::Rotor3 r = ga3::rotor_between_bivectors(ga3::plane_e12(), ga3::unit_kirchhoff());
    return r;
}

Shape fit_shape(std::span<const gac::Point2> pts) {
    try {
        const gac::ConicFit fit = gac::fit_centered_conic(pts);
        const gac::EllipseParams e = gac::extract_ellipse(fit.conic);
        if (gac::classify_conic(fit.conic) == gac::ConicKind::Circle) {
            return Circle{0.5 * (e.a + e.b)};
        }
        return e;
    } catch (const Error& err) {
        switch (err.code()) {
            case ErrorCode::NoNonNegativeEigenvalue:
            case ErrorCode::SingularNormalization:
            case ErrorCode::NotAnEllipse:
                return gac::fit_line_tls(pts);
            default:
                throw;
        }
    }
}

}  // namespace

std::size_t WindowConfig::window_length() const {
    return static_cast<std::size_t>(std::lround(window_fraction * fs / f0));
}

void WindowConfig::validate() const {
    auto fail = [](const std::string& msg) { throw Error(ErrorCode::InvalidConfig, msg); };
    if (!(f0 > 0.0)) fail("f0 must be positive");
    if (!(window_fraction > 0.0 && window_fraction <= 1.0)) fail("window fraction must be in (0, 1]");
    if (!(fs >= 20.0 * f0)) fail("sampling rate must be at least 20 x f0");
    if (hop < 1) fail("hop must be >= 1");
    if (!(degenerate_ratio >= 0.0 && degenerate_ratio < 1.0)) fail("degenerate ratio must be in [0, 1)");
    if (nominal_peak && !(*nominal_peak > 0.0)) fail("nominal peak must be positive");
    if (window_length() < 4) fail("window shorter than 4 samples");
}

Bivector3 window_bivector(std::span<const Vector3> window) {
    if (window.size() < 2) {
        throw Error(ErrorCode::InsufficientPoints, "bivector needs two samples");
    }
    return ga3::wedge(window.front(), window.back());
}

std::vector<gac::Point2> rotate_to_plane(std::span<const Vector3> window, const ga3::Rotor3& rotor,
                                         double* max_out_of_plane) {
    std::vector<gac::Point2> pts;
    pts.reserve(window.size());
    double worst = 0.0;
    for (const Vector3& x : window) {
        const Vector3 r = ga3::sandwich(rotor, x);
        pts.push_back({r.x1, r.x2});
        const double n = ga3::norm(x);
        if (n > 0.0) worst = std::max(worst, std::abs(r.x3) / n);
    }
    if (max_out_of_plane != nullptr) *max_out_of_plane = worst;
    return pts;
}

std::vector<gac::Point2> reduce_to_plane(std::span<const Vector3> window, const Bivector3& b) {
    try {
        const auto rotor = ga3::rotor_between_bivectors(ga3::plane_e12(), ga3::normalized(b));
        return rotate_to_plane(window, rotor);
    } catch (const Error& err) {
        if (err.code() != ErrorCode::AntiparallelPlanes || window.size() < 3) throw;
    }
    const Bivector3 retry = ga3::wedge(window[1], window.back());
    const auto rotor = ga3::rotor_between_bivectors(ga3::plane_e12(), ga3::normalized(retry));
    return rotate_to_plane(window, rotor);
}

namespace {

// Second differences of a sampled sinusoid are O((w dt)^2) of its amplitude,
// so at the sampling rates accepted here they are dominated by white noise,
// whose second difference has variance 6 sigma^2.
void estimate_levels(std::span<const Vector3> window, WindowAnalysis& out) {
    double sig = 0.0;
    for (const Vector3& x : window) sig += ga3::dot(x, x);
    out.signal_rms = std::sqrt(sig / static_cast<double>(window.size()));
    if (window.size() < 3) return;
    double acc = 0.0;
    for (std::size_t i = 1; i + 1 < window.size(); ++i) {
        const Vector3 d = window[i + 1] - 2.0 * window[i] + window[i - 1];
        acc += ga3::dot(d, d);
    }
    out.noise_rms = std::sqrt(acc / (18.0 * static_cast<double>(window.size() - 2)));
}

}  // namespace

WindowAnalysis analyze_window(std::span<const Vector3> window, const WindowConfig& cfg,
                              double t_start, double t_end) {
    if (window.size() < 2) {
        throw Error(ErrorCode::InsufficientPoints, "window needs at least two samples");
    }
    WindowAnalysis out;
    out.t_start = t_start;
    out.t_end = t_end;
    out.bivector = window_bivector(window);

    const double n1 = ga3::norm(window.front());
    const double nn = ga3::norm(window.back());
    double peak = 0.0;
    for (const Vector3& x : window) peak = std::max(peak, ga3::norm(x));
    const double bmag = ga3::magnitude(out.bivector);
    const double span_max = std::max(n1, nn);
    out.plane_conditioning = span_max > 0.0 ? bmag / (span_max * span_max) : 0.0;
    estimate_levels(window, out);

    // |x1 ^ xn| / (|x1||xn|) = |sin angle(x1, xn)|. A vanishing endpoint
    // means the trajectory passes through the origin, i.e. it is a line.
    const bool endpoint_at_origin = n1 * nn <= 1e-24 * peak * peak;
    const double ratio = endpoint_at_origin ? 0.0 : bmag / (n1 * nn);

    if (endpoint_at_origin || ratio < cfg.degenerate_ratio) {
        out.degenerate = true;
        const Bivector3 k = ga3::unit_kirchhoff();
        out.bnorm = {k.b12, k.b23, k.b31};
        const auto pts = rotate_to_plane(window, kirchhoff_rotor());
        try {
            out.shape = gac::fit_line_tls(pts);
        } catch (const Error& err) {
            if (err.code() != ErrorCode::DegenerateCloud) throw;
            // Collapsed (all-zero) window: a line of no extent.
            out.shape = gac::LineParams{0.0, 0.0};
        }
        return out;
    }

    Bivector3 unit = ga3::normalized(out.bivector);
    out.bnorm = {std::abs(unit.b12), std::abs(unit.b23), std::abs(unit.b31)};
    // Orient the plane towards the Kirchhoff normal so reversed phase
    // sequence lands in the same in-plane frame.
    if (ga3::dot(unit, ga3::unit_kirchhoff()) < 0.0) unit = -unit;

    const auto pts = reduce_to_plane(window, unit);
    out.shape = fit_shape(pts);
    return out;
}

std::vector<SampleFrame> smooth(std::span<const SampleFrame> frames, std::size_t width) {
    std::vector<SampleFrame> out(frames.begin(), frames.end());
    if (width <= 1) return out;
    std::array<double, 3> acc{};
    for (std::size_t i = 0; i < frames.size(); ++i) {
        for (std::size_t c = 0; c < 3; ++c) {
            acc[c] += frames[i].ch[c];
            if (i >= width) acc[c] -= frames[i - width].ch[c];
            out[i].ch[c] = acc[c] / static_cast<double>(std::min(i + 1, width));
        }
    }
    return out;
}

std::vector<WindowAnalysis> analyze_record(std::span<const SampleFrame> frames,
                                           const WindowConfig& cfg) {
    cfg.validate();
    const double dt = 1.0 / cfg.fs;
    for (std::size_t i = 0; i < frames.size(); ++i) {
        for (double v : frames[i].ch) {
            if (!std::isfinite(v)) {
                throw Error(ErrorCode::InvalidConfig, "non-finite sample at index " + std::to_string(i));
            }
        }
        if (i > 0 && std::abs(frames[i].t - frames[i - 1].t - dt) > 0.01 * dt) {
            throw Error(ErrorCode::NonUniformSampling,
                        "step " + std::to_string(frames[i].t - frames[i - 1].t) + " s at index " +
                            std::to_string(i) + " deviates from 1/fs by more than 1%");
        }
    }

    const std::size_t n = cfg.window_length();
    if (frames.size() < n) return {};

    std::vector<SampleFrame> prepared = smooth(frames, cfg.smoothing_width);
    std::vector<Vector3> xs;
    xs.reserve(prepared.size());
    const double gain = cfg.nominal_peak ? 1.0 / *cfg.nominal_peak : 1.0;
    for (const SampleFrame& f : prepared) xs.push_back(gain * to_vector(f));

    const std::size_t count = (frames.size() - n) / cfg.hop + 1;
    std::vector<WindowAnalysis> out(count);
    auto run = [&](std::size_t begin, std::size_t end) {
        for (std::size_t w = begin; w < end; ++w) {
            const std::size_t s = w * cfg.hop;
            out[w] = analyze_window(std::span<const Vector3>(xs).subspan(s, n), cfg, frames[s].t,
                                    frames[s + n - 1].t);
        }
    };

    unsigned threads = cfg.threads != 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, (count + 255) / 256));
    if (threads <= 1) {
        run(0, count);
        return out;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    const std::size_t chunk = (count + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        const std::size_t begin = t * chunk;
        const std::size_t end = std::min(count, begin + chunk);
        pool.emplace_back([&, t, begin, end] {
            try {
                run(begin, end);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

}  // namespace gafault::pipeline
