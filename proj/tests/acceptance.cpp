// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "commands.hpp"
#include "gafault/classify.hpp"
#include "gafault/error.hpp"
#include "gafault/ga3.hpp"
#include "gafault/gac.hpp"
#include "gafault/pipeline.hpp"
#include "gafault/studies.hpp"
#include "gafault/synth.hpp"

using namespace gafault;
using classify::FaultLabel;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

ga3::Multivector3 random_mv(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ga3::Multivector3 m;
    for (double& c : m.c) c = u(rng);
    return m;
}

ga3::Bivector3 random_unit_bivector(std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    return ga3::normalized({g(rng), g(rng), g(rng)});
}

double mv_diff(const ga3::Multivector3& a, const ga3::Multivector3& b) { return ga3::norm(a - b); }

// Steady post-fault windows of a noiseless record.
std::vector<pipeline::WindowAnalysis> post_fault_windows(const synth::FaultScenario& scn,
                                                         const pipeline::WindowConfig& cfg = {}) {
    const auto frames = synth::generate(scn, 1);
    std::vector<pipeline::WindowAnalysis> out;
    for (auto& w : pipeline::analyze_record(frames, cfg)) {
        if (w.t_start >= scn.fault_time - 0.5 / scn.fs) out.push_back(w);
    }
    return out;
}

gac::EllipseParams shape_params(const pipeline::Shape& s) {
    if (const auto* e = std::get_if<gac::EllipseParams>(&s)) return *e;
    if (const auto* c = std::get_if<pipeline::Circle>(&s)) return {c->radius, c->radius, 0.0};
    const auto& l = std::get<gac::LineParams>(s);
    return {l.half_length, 0.0, l.angle};
}

double angle_gap(double a, double b) {
    const double d = std::abs(gac::fold_half_turn(a) - gac::fold_half_turn(b));
    return std::min(d, kPi - d);
}

// 1
Outcome ga_identities() {
    std::mt19937_64 rng(101);
    double worst = 0.0;
    auto rel = [](double err, double scale) { return err / std::max(1.0, scale); };
    const int n = 1000;
    for (int i = 0; i < n; ++i) {
        const auto a = random_mv(rng), b = random_mv(rng), c = random_mv(rng);
        const auto lhs = ga3::geometric_product(ga3::geometric_product(a, b), c);
        const auto rhs = ga3::geometric_product(a, ga3::geometric_product(b, c));
        worst = std::max(worst, rel(mv_diff(lhs, rhs), ga3::norm(lhs)));

        std::normal_distribution<double> g;
        const ga3::Vector3 u{g(rng), g(rng), g(rng)}, v{g(rng), g(rng), g(rng)};
        const auto U = ga3::to_multivector(u), V = ga3::to_multivector(v);
        const auto anti = ga3::geometric_product(U, V) + ga3::geometric_product(V, U);
        worst = std::max(worst, rel(mv_diff(anti, ga3::Multivector3::scalar(2.0 * ga3::dot(u, v))),
                                    ga3::norm(anti)));

        worst = std::max(worst, rel(mv_diff(ga3::reverse(ga3::reverse(a)), a), ga3::norm(a)));
        const auto rab = ga3::reverse(ga3::geometric_product(a, b));
        worst = std::max(worst, rel(mv_diff(rab, ga3::geometric_product(ga3::reverse(b), ga3::reverse(a))),
                                    ga3::norm(rab)));

        const auto B1 = random_unit_bivector(rng), B2 = random_unit_bivector(rng);
        if (ga3::dot(B1, B2) < -1.0 + 1e-6) continue;
        const auto R = ga3::to_multivector(ga3::rotor_between_bivectors(B1, B2));
        worst = std::max(worst, mv_diff(ga3::geometric_product(R, ga3::reverse(R)),
                                        ga3::Multivector3::scalar(1.0)));
    }
    for (std::size_t i = 1; i <= 3; ++i) {
        const auto e = ga3::Multivector3::basis(i);
        worst = std::max(worst, mv_diff(ga3::geometric_product(e, e), ga3::Multivector3::scalar(1.0)));
        for (std::size_t j = 1; j <= 3; ++j) {
            if (i == j) continue;
            const auto f = ga3::Multivector3::basis(j);
            worst = std::max(worst, mv_diff(ga3::geometric_product(e, f), -ga3::geometric_product(f, e)));
        }
    }
    return {worst <= 1e-9, fmt("%d cases per identity, worst relative error %.2e (tol 1e-9)", n, worst)};
}

// 2
Outcome rotor_alignment() {
    std::mt19937_64 rng(202);
    double worst = 0.0;
    int cases = 0;
    while (cases < 1000) {
        const auto B = random_unit_bivector(rng);
        if (ga3::dot(B, ga3::plane_e12()) < -1.0 + 1e-6) continue;
        const auto R = ga3::rotor_between_bivectors(ga3::plane_e12(), B);
        const auto out = ga3::sandwich(R, B);
        worst = std::max(worst, ga3::magnitude(out + -ga3::plane_e12()));
        ++cases;
    }
    const double dev = ga3::kirchhoff_deviation(ga3::plane_e12());
    const double dev_err = std::abs(dev - std::acos(1.0 / std::sqrt(3.0)));
    return {worst <= 1e-10 && dev_err <= 1e-12,
            fmt("worst alignment error %.2e (tol 1e-10); Kirchhoff deviation error %.2e (tol 1e-12)",
                worst, dev_err)};
}

// 3
Outcome ellipse_oracle() {
    std::mt19937_64 rng(303);
    std::uniform_real_distribution<double> ua(0.2, 5.0), ur(0.05, 0.9), ut(0.0, kPi), up(0.0, 2.0 * kPi);
    int ok = 0;
    double worst = 0.0;
    const int n = 500;
    for (int i = 0; i < n; ++i) {
        const double a = ua(rng), b = a * ur(rng), th = ut(rng), psi0 = up(rng);
        std::vector<gac::Point2> pts;
        for (int k = 0; k < 50; ++k) {
            const double psi = psi0 + 0.5 * kPi * k / 49.0;
            const double u = a * std::cos(psi), v = b * std::sin(psi);
            pts.push_back({std::cos(th) * u - std::sin(th) * v, std::sin(th) * u + std::cos(th) * v});
        }
        try {
            const auto p = gac::extract_ellipse(gac::fit_centered_conic(pts).conic);
            const double err = std::max({std::abs(p.a - a) / a, std::abs(p.b - b) / b, angle_gap(p.theta, th) / kPi});
            worst = std::max(worst, err);
            if (err <= 1e-6) ++ok;
        } catch (const Error&) {
            worst = 1.0;
        }
    }
    return {ok == n, fmt("%d/%d quarter-arc fits within 1e-6, worst %.2e", ok, n, worst)};
}

// 4
Outcome fit_study() {
    // Gate on 100 trials; monotonicity on 2000 so Monte-Carlo scatter does not
    // masquerade as a trend.
    const auto gate_study = synth::fit_error_study(synth::kStudyNoiseLevels, {0.25}, 100, 404);
    const auto study = synth::fit_error_study(synth::kStudyNoiseLevels, synth::default_arc_fractions(), 2000, 404);
    bool monotone = true;
    std::string breaks;
    for (std::size_t j = 0; j < study.noise_levels.size(); ++j) {
        for (std::size_t i = 1; i < study.fractions.size(); ++i) {
            if (study.error[i][j] > study.error[i - 1][j]) {
                monotone = false;
                breaks += fmt(" [%g%% noise: %.0f%%->%.0f%% %.5f->%.5f]", 100 * study.noise_levels[j],
                              100 * study.fractions[i - 1], 100 * study.fractions[i], study.error[i - 1][j],
                              study.error[i][j]);
            }
        }
    }
    const double gate = gate_study.error[0][1];  // 1% noise
    return {monotone && gate < 0.02,
            fmt("monotone in arc fraction (2000 trials): %s; error at 25%% arc, 1%% noise over 100 trials = %.4f (gate < 0.02)",
                monotone ? "yes" : "no", gate) + breaks};
}

// 5
Outcome bivector_study() {
    const std::vector<double> angles{kPi / 16.0, kPi / 2.0, 15.0 * kPi / 16.0};
    const auto s = synth::bivector_error_study(synth::kStudyNoiseLevels, 1000, 505, angles);
    bool ok = true;
    std::string detail;
    for (std::size_t j = 0; j < s.noise_levels.size(); ++j) {
        ok = ok && s.error[1][j] < s.error[0][j] && s.error[1][j] < s.error[2][j];
        detail += fmt(" [%g%%: %.3g / %.3g / %.3g]", 100 * s.noise_levels[j], s.error[0][j], s.error[1][j],
                      s.error[2][j]);
    }
    return {ok, "error at pi/16 / pi/2 / 15pi/16, 1000 trials:" + detail};
}

// 6
struct TableRow {
    FaultLabel label;
    double s;
    double b12, b23, b31, a, b, theta;
};

const std::vector<TableRow>& table_one() {
    static const std::vector<TableRow> rows{
        {FaultLabel::AG, 0.1, 0.5560, 0.6178, 0.5560, 1.2247, 1.1446, 1.2862},
        {FaultLabel::AG, 0.4, 0.4472, 0.7746, 0.4472, 1.2247, 0.9129, 1.1957},
        {FaultLabel::AG, 0.6, 0.3651, 0.8539, 0.3651, 1.2247, 0.8165, 1.1071},
        {FaultLabel::AG, 0.9, 0.0990, 0.9902, 0.0990, 1.2247, 0.7141, 0.8801},
        {FaultLabel::BG, 0.1, 0.5560, 0.5560, 0.6178, 1.2247, 1.1446, 0.2846},
        {FaultLabel::BG, 0.4, 0.4472, 0.4472, 0.7746, 1.2247, 0.9129, 0.3751},
        {FaultLabel::BG, 0.6, 0.3651, 0.3651, 0.8539, 1.2247, 0.8165, 0.4636},
        {FaultLabel::BG, 0.9, 0.0990, 0.0990, 0.9902, 1.2247, 0.7141, 0.6907},
        {FaultLabel::CG, 0.1, 0.6178, 0.5560, 0.5560, 1.2247, 1.1446, 2.3562},
        {FaultLabel::CG, 0.4, 0.7746, 0.4472, 0.4472, 1.2247, 0.9129, 2.3562},
        {FaultLabel::CG, 0.6, 0.8539, 0.3651, 0.3651, 1.2247, 0.8165, 2.3562},
        {FaultLabel::CG, 0.9, 0.9902, 0.0990, 0.0990, 1.2247, 0.7141, 2.3562},
        {FaultLabel::ABG, 0.1, 0.5369, 0.5966, 0.5966, 1.1853, 1.1023, 0.7854},
        {FaultLabel::ABG, 0.4, 0.3780, 0.6547, 0.6547, 1.0801, 0.7559, 0.7854},
        {FaultLabel::ABG, 0.6, 0.2774, 0.6831, 0.6831, 1.0408, 0.4915, 0.7854},
        {FaultLabel::ABG, 0.9, 0.0705, 0.7054, 0.7054, 1.0025, 0.1225, 0.7854},
        {FaultLabel::BCG, 0.1, 0.5965, 0.5369, 0.5965, 1.1853, 1.1023, 2.9015},
        {FaultLabel::BCG, 0.4, 0.6509, 0.3906, 0.6509, 1.0863, 0.7348, 2.9735},
        {FaultLabel::BCG, 0.6, 0.6804, 0.2722, 0.6804, 1.0392, 0.4899, 3.0268},
        {FaultLabel::BCG, 0.9, 0.7053, 0.0705, 0.7053, 1.0025, 0.1225, 3.1123},
        {FaultLabel::CAG, 0.1, 0.5966, 0.5966, 0.5369, 1.1853, 1.1023, 1.8109},
        {FaultLabel::CAG, 0.4, 0.6547, 0.6547, 0.3780, 1.0801, 0.7559, 1.7701},
        {FaultLabel::CAG, 0.6, 0.6831, 0.6831, 0.2774, 1.0408, 0.4915, 1.7391},
        {FaultLabel::CAG, 0.9, 0.7054, 0.7054, 0.0705, 1.0025, 0.1225, 1.6001},
        {FaultLabel::AB, 0.1, 0.5774, 0.5774, 0.5774, 1.2247, 1.1023, 0.7854},
        {FaultLabel::AB, 0.4, 0.5774, 0.5774, 0.5774, 1.2247, 0.7348, 0.7854},
        {FaultLabel::AB, 0.6, 0.5774, 0.5774, 0.5774, 1.2247, 0.4899, 0.7854},
        {FaultLabel::AB, 0.9, 0.5774, 0.5774, 0.5774, 1.2247, 0.1225, 0.7854},
        {FaultLabel::BC, 0.1, 0.5774, 0.5774, 0.5774, 1.2247, 1.1023, 2.8798},
        {FaultLabel::BC, 0.4, 0.5774, 0.5774, 0.5774, 1.2247, 0.7348, 2.8798},
        {FaultLabel::BC, 0.6, 0.5774, 0.5774, 0.5774, 1.2247, 0.4899, 2.8798},
        {FaultLabel::BC, 0.9, 0.5774, 0.5774, 0.5774, 1.2247, 0.1225, 2.8798},
        {FaultLabel::CA, 0.1, 0.5774, 0.5774, 0.5774, 1.2247, 1.1023, 1.8326},
        {FaultLabel::CA, 0.4, 0.5774, 0.5774, 0.5774, 1.2247, 0.7348, 1.8326},
        {FaultLabel::CA, 0.6, 0.5774, 0.5774, 0.5774, 1.2247, 0.4899, 1.8326},
        {FaultLabel::CA, 0.9, 0.5774, 0.5774, 0.5774, 1.2247, 0.1225, 1.8326},
        {FaultLabel::ABC, 0.1, 0.5774, 0.5774, 0.5774, 1.1023, 1.1023, 0.0},
        {FaultLabel::ABC, 0.4, 0.5774, 0.5774, 0.5774, 0.7348, 0.7348, 0.0},
        {FaultLabel::ABC, 0.6, 0.5774, 0.5774, 0.5774, 0.4899, 0.4899, 0.0},
        {FaultLabel::ABC, 0.9, 0.5774, 0.5774, 0.5774, 0.1225, 0.1225, 0.0},
    };
    return rows;
}

Outcome table_fixtures() {
    // (a) ground-fault bivectors at 0.1 and 0.9
    double worst_a = 0.0;
    for (const auto& r : table_one()) {
        if (classify::family(r.label) != classify::FaultFamily::LineGround || (r.s != 0.1 && r.s != 0.9)) continue;
        synth::FaultScenario scn{r.label, r.s};
        for (const auto& w : post_fault_windows(scn)) {
            worst_a = std::max({worst_a, std::abs(w.bnorm[0] - r.b12), std::abs(w.bnorm[1] - r.b23),
                                std::abs(w.bnorm[2] - r.b31)});
        }
    }
    // (b) line-to-line and three-phase geometry, pure-R faults
    double worst_b = 0.0;
    int rows_b = 0;
    for (const auto& r : table_one()) {
        const auto fam = classify::family(r.label);
        if (fam != classify::FaultFamily::LineLine && fam != classify::FaultFamily::ThreePhase) continue;
        ++rows_b;
        for (const auto& w : post_fault_windows(synth::FaultScenario{r.label, r.s})) {
            const auto p = shape_params(w.shape);
            worst_b = std::max({worst_b, std::abs(p.a - r.a), std::abs(p.b - r.b), angle_gap(p.theta, r.theta)});
        }
    }
    // (c) classification of every tabulated row
    const auto model = classify::SeverityModel{};
    int right = 0;
    std::string wrong;
    for (const auto& r : table_one()) {
        pipeline::WindowAnalysis w;
        w.bnorm = {r.b12, r.b23, r.b31};
        w.shape = gac::EllipseParams{r.a, r.b, r.theta};
        w.plane_conditioning = 1.0;
        const auto rep = classify::classify(w, {}, model);
        if (rep.label == r.label) {
            ++right;
        } else {
            wrong += fmt(" %s@%.1f->%s", std::string(classify::to_string(r.label)).c_str(), r.s,
                         std::string(classify::to_string(rep.label)).c_str());
        }
    }
    const int n = static_cast<int>(table_one().size());
    return {worst_a <= 1e-3 && worst_b <= 1e-3 && right == n,
            fmt("(a) ground bnorm worst %.2e; (b) %d L-L/L-L-L rows worst %.2e; (c) %d/%d rows classified",
                worst_a, rows_b, worst_b, right, n) + wrong};
}

// 7
Outcome corpus() {
    cli::CorpusOptions opt;
    opt.noise_levels = {0.0, 0.01};
    opt.trials_per_cell = 6;  // 10 x 9 x 2 x 6 = 1080 records per noise level
    opt.seed = 707;
    const auto r = cli::cmd_corpus(opt);
    const auto& clean = r.totals[0];
    const auto& noisy = r.totals[1];
    std::string worst;
    for (const auto& row : r.rows) {
        if (row.correct < row.trials) {
            worst += fmt(" [%g%% %s %d/%d]", 100 * row.noise, std::string(classify::to_string(row.label)).c_str(),
                         row.correct, row.trials);
        }
    }
    return {clean.correct == clean.trials && noisy.accuracy() >= 0.99,
            fmt("noiseless %d/%d; 1%% noise %d/%d = %.2f%% (gate >= 99%%)", clean.correct, clean.trials,
                noisy.correct, noisy.trials, 100 * noisy.accuracy()) + worst};
}

// 8
Outcome severity() {
    const classify::SeverityModel model;
    double worst_exact = 0.0;
    double lg_sum = 0.0;
    int lg_n = 0;
    for (FaultLabel label : classify::kFaultTypes) {
        const auto fam = classify::family(label);
        for (int k = 1; k <= 9; ++k) {
            const double s = 0.1 * k;
            synth::FaultScenario scn{label, s};
            const auto windows = post_fault_windows(scn);
            for (const auto& w : windows) {
                const double est = classify::estimate_severity(label, w.shape, model);
                if (fam == classify::FaultFamily::LineLine || fam == classify::FaultFamily::ThreePhase) {
                    worst_exact = std::max(worst_exact, std::abs(est - s));
                }
            }
            if (fam == classify::FaultFamily::LineGround) {
                double mean = 0.0;
                for (const auto& w : windows) mean += classify::estimate_severity(label, w.shape, model);
                lg_sum += std::abs(mean / windows.size() - s);
                ++lg_n;
            }
        }
    }
    const double mae = lg_sum / lg_n;
    return {worst_exact <= 1e-6 && mae <= 0.08,
            fmt("L-L / L-L-L worst error %.2e (tol 1e-6); L-G MAE %.2f%% over %d records (gate <= 8%%)",
                worst_exact, 100 * mae, lg_n)};
}

// 9
Outcome degenerate_and_latency() {
    const classify::SeverityModel model;
    bool bolted_ok = true;
    std::string bolted;
    for (FaultLabel label : {FaultLabel::AB, FaultLabel::BC, FaultLabel::CA}) {
        synth::FaultScenario scn{label, 1.0};
        const auto windows = post_fault_windows(scn);
        for (const auto& w : windows) {
            const auto rep = classify::classify(w, {}, model);
            const bool ok = w.degenerate && std::holds_alternative<gac::LineParams>(w.shape) && rep.label == label &&
                            rep.severity && std::abs(*rep.severity - 1.0) < 1e-9;
            if (!ok) {
                bolted_ok = false;
                bolted += fmt(" [%s t=%.4f]", std::string(classify::to_string(label)).c_str(), w.t_start);
                break;
            }
        }
    }

    const pipeline::WindowConfig cfg;
    const double window_time = static_cast<double>(cfg.window_length()) / cfg.fs;
    double worst_latency = 0.0;
    std::string slow;
    for (FaultLabel label : classify::kFaultTypes) {
        for (int k = 1; k <= 9; ++k) {
            for (double shift : {0.0, 0.2}) {
                synth::FaultScenario scn{label, 0.1 * k, shift};
                const auto frames = synth::generate(scn, 1);
                double latency = 1.0;
                for (const auto& w : pipeline::analyze_record(frames, cfg)) {
                    if (w.t_end < scn.fault_time) continue;
                    if (classify::classify(w, {}, model).label == label) {
                        latency = w.t_end - scn.fault_time;
                        break;
                    }
                }
                if (latency > worst_latency) {
                    worst_latency = latency;
                    slow = fmt(" (slowest %s s=%.1f shift=%.1f)", std::string(classify::to_string(label)).c_str(),
                               0.1 * k, shift);
                }
            }
        }
    }
    const double limit = 1.25 * window_time;
    return {bolted_ok && worst_latency <= limit + 1e-12,
            fmt("bolted L-L degenerate lines in sector with severity 1: %s; worst latency %.2f ms (limit %.2f ms)",
                bolted_ok ? "yes" : "no", 1e3 * worst_latency, 1e3 * limit) + slow + bolted};
}

// 10
int run_cli(std::vector<std::string> args, std::string* err_text = nullptr) {
    args.insert(args.begin(), "gafault");
    std::vector<const char*> argv;
    for (auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    if (err_text) *err_text = err.str();
    return code;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Outcome cli_end_to_end() {
    const auto dir = std::filesystem::temp_directory_path() / "gafault_acceptance";
    std::filesystem::create_directories(dir);
    const auto wave = (dir / "wave.csv").string();
    const auto prefix = (dir / "rep").string();

    int right = 0, total = 0;
    std::string wrong;
    auto round_trip = [&](const std::string& fault, std::vector<std::string> extra) {
        std::vector<std::string> args{"synth", "--fault", fault, "-o", wave};
        args.insert(args.end(), extra.begin(), extra.end());
        ++total;
        if (run_cli(args) != 0 || run_cli({"analyze", wave, "-o", prefix}) != 0) {
            wrong += " [" + fault + " failed to run]";
            return;
        }
        const auto j = nlohmann::json::parse(slurp(prefix + "_summary.json"));
        const std::string got = j["voltage"]["label"];
        if (classify::parse_label(got) == classify::parse_label(fault)) {
            ++right;
        } else {
            wrong += " [" + fault;
            for (auto& e : extra) wrong += " " + e;
            wrong += " -> " + got + "]";
        }
    };
    round_trip("none", {});
    for (FaultLabel label : classify::kFaultTypes) {
        const std::string name(classify::to_string(label));
        for (int k = 1; k <= 9; ++k) {
            const std::string sev = fmt("%.1f", 0.1 * k);
            round_trip(name, {"--severity", sev});
            if (classify::family(label) == classify::FaultFamily::LineLine) {
                round_trip(name, {"--severity", sev, "--phase-shift", "0.2"});
            }
        }
    }

    const auto w1 = (dir / "n1.csv").string(), w2 = (dir / "n2.csv").string();
    run_cli({"synth", "--fault", "BG", "--severity", "0.3", "--noise", "0.01", "--seed", "42", "-o", w1});
    run_cli({"synth", "--fault", "BG", "--severity", "0.3", "--noise", "0.01", "--seed", "42", "-o", w2});
    bool identical = slurp(w1) == slurp(w2) && !slurp(w1).empty();
    run_cli({"analyze", w1, "-o", (dir / "a1").string()});
    run_cli({"analyze", w2, "-o", (dir / "a2").string()});
    identical = identical && slurp(dir / "a1_windows.csv") == slurp(dir / "a2_windows.csv");

    const auto bad = dir / "bad.csv";
    {
        std::ofstream out(bad);
        out << "t,va,vb,vc\n0,1,0,0\n0.0001,1,0,0\n0.0002,nan,0,0\n";
    }
    std::string err;
    const int code = run_cli({"analyze", bad.string(), "-o", prefix}, &err);
    const bool rejected = code == cli::kExitData && err.find("line 4") != std::string::npos;

    std::filesystem::remove_all(dir);
    return {right == total && identical && rejected,
            fmt("round trip %d/%d labels; fixed-seed outputs byte-identical: %s; NaN row rejected with line "
                "number (exit %d): %s",
                right, total, identical ? "yes" : "no", code, rejected ? "yes" : "no") + wrong};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"1 GA kernel identities", ga_identities},
        {"2 rotor alignment and Kirchhoff deviation", rotor_alignment},
        {"3 noiseless quarter-arc ellipse recovery", ellipse_oracle},
        {"4 fit error versus arc fraction", fit_study},
        {"5 bivector error versus wedge angle", bivector_study},
        {"6 Table I fixtures", table_fixtures},
        {"7 classification corpus", corpus},
        {"8 severity estimation", severity},
        {"9 degenerate handling and latency", degenerate_and_latency},
        {"10 CLI end to end", cli_end_to_end},
    };
    int failed = 0;
    for (const auto& [name, fn] : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s  criterion %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str(), secs);
        std::fflush(stdout);
        if (!o.pass) ++failed;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
