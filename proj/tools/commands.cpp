#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "csv_io.hpp"
#include "gafault/error.hpp"

namespace gafault::cli {

namespace {

using classify::FaultLabel;

std::filesystem::path with_suffix(const std::filesystem::path& prefix, const char* suffix) {
    std::filesystem::path p = prefix;
    p += suffix;
    return p;
}

nlohmann::json summary_json(const classify::RecordSummary& s) {
    nlohmann::json j;
    j["label"] = std::string(classify::to_string(s.label));
    j["onset"] = s.onset ? nlohmann::json(*s.onset) : nlohmann::json(nullptr);
    j["detected_at"] = s.detected_at ? nlohmann::json(*s.detected_at) : nlohmann::json(nullptr);
    j["mean_severity"] = s.mean_severity ? nlohmann::json(*s.mean_severity) : nlohmann::json(nullptr);
    j["windows"] = s.windows;
    j["faulted_windows"] = s.faulted_windows;
    j["ambiguous_windows"] = s.ambiguous_windows;
    return j;
}

std::string format_study(const std::vector<double>& x, const char* x_name,
                         const std::vector<double>& noise,
                         const std::vector<std::vector<double>>& error) {
    std::string out = x_name;
    char buf[64];
    for (double n : noise) {
        std::snprintf(buf, sizeof buf, ",err_%g%%", n * 100.0);
        out += buf;
    }
    out += '\n';
    for (std::size_t i = 0; i < x.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.10g", x[i]);
        out += buf;
        for (double e : error[i]) {
            std::snprintf(buf, sizeof buf, ",%.10g", e);
            out += buf;
        }
        out += '\n';
    }
    return out;
}

std::string number_or_empty(const std::optional<double>& v) {
    if (!v) return {};
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", *v);
    return buf;
}

}  // namespace

ChannelReport analyze_channel(const std::vector<pipeline::SampleFrame>& frames,
                              const pipeline::WindowConfig& window,
                              const classify::ClassifierConfig& classifier,
                              const classify::SeverityModel& model) {
    classifier.validate();
    ChannelReport out;
    out.windows = pipeline::analyze_record(frames, window);
    out.reports.reserve(out.windows.size());
    for (const auto& w : out.windows) out.reports.push_back(classify::classify(w, classifier, model));
    out.summary = classify::summarize(out.windows, out.reports);
    return out;
}

std::string format_window_rows(const ChannelReport& report) {
    std::string out = "t_start,b12,b23,b31,shape,a,b,theta,degenerate,label,severity\n";
    char buf[256];
    for (std::size_t i = 0; i < report.windows.size(); ++i) {
        const auto& w = report.windows[i];
        const auto& r = report.reports[i];
        const char* kind = "circle";
        double a = 0.0, b = 0.0, theta = 0.0;
        if (const auto* e = std::get_if<gac::EllipseParams>(&w.shape)) {
            kind = "ellipse";
            a = e->a;
            b = e->b;
            theta = e->theta;
        } else if (const auto* l = std::get_if<gac::LineParams>(&w.shape)) {
            kind = "line";
            a = l->half_length;
            theta = l->angle;
        } else {
            a = b = std::get<pipeline::Circle>(w.shape).radius;
        }
        std::snprintf(buf, sizeof buf, "%.9g,%.9g,%.9g,%.9g,%s,%.9g,%.9g,%.9g,%d,%s,", w.t_start,
                      w.bnorm[0], w.bnorm[1], w.bnorm[2], kind, a, b, theta, w.degenerate ? 1 : 0,
                      std::string(classify::to_string(r.label)).c_str());
        out += buf;
        out += number_or_empty(r.severity);
        out += '\n';
    }
    return out;
}

AnalyzeResult cmd_analyze(const AnalyzeOptions& opt) {
    if (opt.pu && !(*opt.pu > 0.0)) throw Error(ErrorCode::InvalidConfig, "--pu must be positive");
    if (!(opt.nominal > 0.0)) throw Error(ErrorCode::InvalidConfig, "--nominal must be positive");
    if (opt.current_nominal && !(*opt.current_nominal > 0.0)) {
        throw Error(ErrorCode::InvalidConfig, "--current-nominal must be positive");
    }
    opt.window.validate();
    opt.classifier.validate();
    if (opt.output_prefix.empty()) throw Error(ErrorCode::InvalidConfig, "output prefix required");
    const auto parent = opt.output_prefix.parent_path();
    if (!parent.empty() && !std::filesystem::is_directory(parent)) {
        throw Error(ErrorCode::InvalidConfig, "output directory does not exist: " + parent.string());
    }

    const Waveforms data = read_waveforms(opt.input);

    pipeline::WindowConfig vcfg = opt.window;
    vcfg.nominal_peak = opt.pu;
    const auto vmodel = classify::SeverityModel::from_peak(opt.pu ? 1.0 : opt.nominal);

    AnalyzeResult result;
    result.voltage = analyze_channel(data.voltage, vcfg, opt.classifier, vmodel);
    if (!data.current.empty()) {
        pipeline::WindowConfig icfg = opt.window;
        icfg.nominal_peak = std::nullopt;
        const double inom = opt.current_nominal.value_or(opt.pu ? *opt.pu : opt.nominal);
        if (opt.pu) icfg.nominal_peak = inom;
        const auto imodel = classify::SeverityModel::from_peak(opt.pu ? 1.0 : inom);
        result.current = analyze_channel(data.current, icfg, opt.classifier, imodel);
    }

    nlohmann::json j;
    j["schema"] = 1;
    j["input"] = opt.input.string();
    j["voltage"] = summary_json(result.voltage.summary);
    j["current"] = result.current ? summary_json(result.current->summary) : nlohmann::json(nullptr);

    write_atomic(with_suffix(opt.output_prefix, "_windows.csv"), format_window_rows(result.voltage));
    if (result.current) {
        write_atomic(with_suffix(opt.output_prefix, "_current_windows.csv"),
                     format_window_rows(*result.current));
    }
    write_atomic(with_suffix(opt.output_prefix, "_summary.json"), j.dump(2) + "\n");
    return result;
}

void cmd_synth(const SynthOptions& opt) {
    opt.scenario.validate();
    if (opt.output.empty()) throw Error(ErrorCode::InvalidConfig, "output path required");
    write_atomic(opt.output, format_waveforms(synth::generate(opt.scenario, opt.seed)));
}

synth::BivectorStudy cmd_study_bivector(const StudyOptions& opt) {
    auto study = synth::bivector_error_study(opt.noise_levels, opt.trials > 0 ? opt.trials : 1000, opt.seed);
    if (!opt.output.empty()) {
        write_atomic(opt.output, format_study(study.angles, "angle", study.noise_levels, study.error));
    }
    return study;
}

synth::FitStudy cmd_study_fit(const StudyOptions& opt) {
    auto study = synth::fit_error_study(opt.noise_levels, synth::default_arc_fractions(),
                                        opt.trials > 0 ? opt.trials : 100, opt.seed);
    if (!opt.output.empty()) {
        write_atomic(opt.output, format_study(study.fractions, "fraction", study.noise_levels, study.error));
    }
    return study;
}

CorpusResult cmd_corpus(const CorpusOptions& opt) {
    if (opt.trials_per_cell < 1) throw Error(ErrorCode::InvalidConfig, "trials per cell must be >= 1");
    opt.window.validate();
    opt.classifier.validate();

    struct Job {
        std::size_t noise;
        FaultLabel label;
        double severity;
        double phase_shift;
        std::uint64_t seed;
        bool correct = false;
        double severity_error = 0.0;
    };
    std::vector<Job> jobs;
    std::uint64_t trial = 0;
    for (std::size_t n = 0; n < opt.noise_levels.size(); ++n) {
        for (FaultLabel label : classify::kFaultTypes) {
            for (int k = 1; k <= 9; ++k) {
                for (double shift : {0.0, opt.rl_phase_shift}) {
                    for (int t = 0; t < opt.trials_per_cell; ++t) {
                        jobs.push_back({n, label, 0.1 * k, shift, opt.seed + trial++});
                    }
                }
            }
        }
    }

    const auto model = classify::SeverityModel::from_peak(1.0);
    auto run_job = [&](Job& job) {
        synth::FaultScenario scn;
        scn.label = job.label;
        scn.severity = job.severity;
        scn.phase_shift = job.phase_shift;
        scn.fault_time = 0.02;
        scn.duration = 0.06;
        scn.f0 = opt.window.f0;
        scn.fs = opt.window.fs;
        scn.noise_std = opt.noise_levels[job.noise];
        std::mt19937_64 rng(job.seed ^ 0x9e3779b97f4a7c15ULL);
        scn.initial_phase = std::uniform_real_distribution<double>(0.0, 2.0 * std::numbers::pi)(rng);
        const auto frames = synth::generate(scn, job.seed);

        pipeline::WindowConfig wcfg = opt.window;
        wcfg.threads = 1;
        const auto windows = pipeline::analyze_record(frames, wcfg);
        std::vector<classify::FaultReport> post;
        double sev_sum = 0.0;
        for (const auto& w : windows) {
            if (w.t_start < scn.fault_time - 0.5 / scn.fs) continue;
            post.push_back(classify::classify(w, opt.classifier, model));
            sev_sum += classify::estimate_severity(job.label, w.shape, model);
        }
        job.correct = !post.empty() && classify::dominant_label(post) == job.label;
        job.severity_error = post.empty() ? 1.0 : std::abs(sev_sum / post.size() - job.severity);
    };

    unsigned threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(jobs.size()));
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < jobs.size(); i += threads) run_job(jobs[i]);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }

    CorpusResult result;
    for (std::size_t n = 0; n < opt.noise_levels.size(); ++n) {
        CorpusRow total{opt.noise_levels[n], FaultLabel::None};
        for (FaultLabel label : classify::kFaultTypes) {
            CorpusRow row{opt.noise_levels[n], label};
            for (const auto& j : jobs) {
                if (j.noise != n || j.label != label) continue;
                ++row.trials;
                row.correct += j.correct ? 1 : 0;
                row.severity_mae += j.severity_error;
            }
            total.trials += row.trials;
            total.correct += row.correct;
            total.severity_mae += row.severity_mae;
            row.severity_mae /= row.trials;
            result.rows.push_back(row);
        }
        total.severity_mae /= total.trials;
        result.totals.push_back(total);
    }

    if (!opt.output.empty()) {
        std::string csv = "noise,type,trials,correct,accuracy,severity_mae\n";
        char buf[160];
        for (const auto& r : result.rows) {
            std::snprintf(buf, sizeof buf, "%g,%s,%d,%d,%.6f,%.6f\n", r.noise,
                          std::string(classify::to_string(r.label)).c_str(), r.trials, r.correct,
                          r.accuracy(), r.severity_mae);
            csv += buf;
        }
        write_atomic(opt.output, csv);
    }
    return result;
}

std::string format_corpus_table(const CorpusResult& result) {
    std::string out;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-8s %-5s %7s %9s %12s\n", "noise", "type", "trials", "accuracy",
                  "severity_mae");
    out += buf;
    std::size_t t = 0;
    for (std::size_t i = 0; i < result.rows.size(); ++i) {
        const auto& r = result.rows[i];
        std::snprintf(buf, sizeof buf, "%-8g %-5s %7d %8.2f%% %11.2f%%\n", r.noise * 100.0,
                      std::string(classify::to_string(r.label)).c_str(), r.trials, 100.0 * r.accuracy(),
                      100.0 * r.severity_mae);
        out += buf;
        const bool last_of_noise = i + 1 == result.rows.size() || result.rows[i + 1].noise != r.noise;
        if (last_of_noise && t < result.totals.size()) {
            const auto& tot = result.totals[t++];
            std::snprintf(buf, sizeof buf, "%-8g %-5s %7d %8.2f%% %11.2f%%\n", tot.noise * 100.0, "all",
                          tot.trials, 100.0 * tot.accuracy(), 100.0 * tot.severity_mae);
            out += buf;
        }
    }
    return out;
}

namespace {

void add_window_flags(CLI::App* cmd, pipeline::WindowConfig& w) {
    cmd->add_option("--f0", w.f0, "Fundamental frequency, Hz")->capture_default_str();
    cmd->add_option("--fs", w.fs, "Sampling frequency, Hz")->capture_default_str();
    cmd->add_option("--window-fraction", w.window_fraction, "Window length in cycles")->capture_default_str();
    cmd->add_option("--hop", w.hop, "Window step in samples")->capture_default_str();
    cmd->add_option("--degenerate-ratio", w.degenerate_ratio,
                    "Bivector magnitude ratio below which the window is a line")->capture_default_str();
    cmd->add_option("--smoothing", w.smoothing_width, "Moving-average width in samples")->capture_default_str();
    cmd->add_option("--threads", w.threads, "Worker threads (0 = all cores)")->capture_default_str();
}

void add_classifier_flags(CLI::App* cmd, classify::ClassifierConfig& c) {
    cmd->add_option("--ground-epsilon", c.ground_epsilon, "Ground-fault bnorm deviation gate")->capture_default_str();
    cmd->add_option("--circle-tol", c.circle_rel_tol, "Relative radius drop for a three-phase fault")->capture_default_str();
    cmd->add_option("--roundness-tol", c.roundness_tol, "Eccentricity below which an ellipse is a circle")->capture_default_str();
    cmd->add_option("--noise-sigmas", c.noise_sigmas, "Gate multiple of the window noise-to-signal ratio")->capture_default_str();
    cmd->add_option("--template-tol", c.template_angle_tol, "Ground template angle tolerance, radians")->capture_default_str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Three-phase fault detection and classification with geometric algebra"};
    app.require_subcommand(1);

    AnalyzeOptions analyze;
    std::string analyze_in, analyze_out;
    auto* a = app.add_subcommand("analyze", "Analyze a waveform CSV");
    a->add_option("input", analyze_in, "Input CSV (t,va,vb,vc[,ia,ib,ic])")->required();
    a->add_option("-o,--output", analyze_out, "Output prefix")->required();
    a->add_option("--pu", analyze.pu, "Peak amplitude for per-unit scaling");
    a->add_option("--nominal", analyze.nominal, "Nominal voltage peak, signal units")->capture_default_str();
    a->add_option("--current-nominal", analyze.current_nominal, "Nominal current peak, signal units");
    add_window_flags(a, analyze.window);
    add_classifier_flags(a, analyze.classifier);

    SynthOptions synth_opt;
    std::string fault = "none", synth_out;
    std::optional<double> severity, phase_shift;
    auto* s = app.add_subcommand("synth", "Generate a synthetic fault record");
    s->add_option("--fault", fault, "none, AG, BG, CG, ABG, BCG, CAG, AB, BC, CA, ABC")->capture_default_str();
    s->add_option("--severity", severity, "Fault severity in [0, 1]");
    s->add_option("--phase-shift", phase_shift, "RL phase shift for line-to-line faults, radians");
    s->add_option("--fault-time", synth_opt.scenario.fault_time, "Fault instant, s")->capture_default_str();
    s->add_option("--duration", synth_opt.scenario.duration, "Record length, s")->capture_default_str();
    s->add_option("--f0", synth_opt.scenario.f0, "Fundamental frequency, Hz")->capture_default_str();
    s->add_option("--fs", synth_opt.scenario.fs, "Sampling frequency, Hz")->capture_default_str();
    s->add_option("--amplitude", synth_opt.scenario.amplitude, "Peak amplitude")->capture_default_str();
    s->add_option("--noise", synth_opt.scenario.noise_std, "Noise std as a fraction of amplitude")->capture_default_str();
    s->add_option("--initial-phase", synth_opt.scenario.initial_phase, "Phase-A angle at t = 0, radians")->capture_default_str();
    s->add_option("--seed", synth_opt.seed, "Random seed")->capture_default_str();
    s->add_option("-o,--output", synth_out, "Output CSV")->required();

    StudyOptions bstudy, fstudy;
    std::string bout, fout;
    auto* sb = app.add_subcommand("study-bivector", "Bivector error versus wedge angle");
    sb->add_option("--noise", bstudy.noise_levels, "Noise levels (fractions)")->capture_default_str();
    sb->add_option("--trials", bstudy.trials, "Trials (default 1000)");
    sb->add_option("--seed", bstudy.seed, "Random seed")->capture_default_str();
    sb->add_option("-o,--output", bout, "Output CSV")->required();
    auto* sf = app.add_subcommand("study-fit", "Ellipse-fit error versus cycle fraction");
    sf->add_option("--noise", fstudy.noise_levels, "Noise levels (fractions)")->capture_default_str();
    sf->add_option("--trials", fstudy.trials, "Trials (default 100)");
    sf->add_option("--seed", fstudy.seed, "Random seed")->capture_default_str();
    sf->add_option("-o,--output", fout, "Output CSV")->required();

    CorpusOptions corpus;
    std::string cout_path;
    auto* c = app.add_subcommand("corpus", "Classification accuracy over the synthetic fault grid");
    c->add_option("--noise", corpus.noise_levels, "Noise levels (fractions)")->capture_default_str();
    c->add_option("--trials", corpus.trials_per_cell, "Trials per type/severity/impedance cell")->capture_default_str();
    c->add_option("--seed", corpus.seed, "Random seed")->capture_default_str();
    c->add_option("--rl-phase-shift", corpus.rl_phase_shift, "Phase shift of RL faults, radians")->capture_default_str();
    c->add_option("-o,--output", cout_path, "Output CSV");
    add_window_flags(c, corpus.window);
    add_classifier_flags(c, corpus.classifier);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        if (*a) {
            analyze.input = analyze_in;
            analyze.output_prefix = analyze_out;
            const auto r = cmd_analyze(analyze);
            out << "voltage: " << classify::to_string(r.voltage.summary.label);
            if (r.voltage.summary.onset) out << " onset " << *r.voltage.summary.onset << " s";
            if (r.voltage.summary.mean_severity) out << " severity " << *r.voltage.summary.mean_severity;
            out << '\n';
            if (r.current) out << "current: " << classify::to_string(r.current->summary.label) << '\n';
        } else if (*s) {
            synth_opt.scenario.label = classify::parse_label(fault);
            const bool healthy = synth_opt.scenario.label == FaultLabel::None;
            if (healthy && severity && *severity != 0.0) {
                throw Error(ErrorCode::InvalidConfig, "--severity needs a fault type");
            }
            if (phase_shift && classify::family(synth_opt.scenario.label) != classify::FaultFamily::LineLine) {
                throw Error(ErrorCode::InvalidConfig, "--phase-shift applies to line-to-line faults only");
            }
            if (!healthy && !severity) throw Error(ErrorCode::InvalidConfig, "--severity is required");
            synth_opt.scenario.severity = severity.value_or(0.0);
            synth_opt.scenario.phase_shift = phase_shift.value_or(0.0);
            synth_opt.output = synth_out;
            cmd_synth(synth_opt);
        } else if (*sb) {
            bstudy.output = bout;
            cmd_study_bivector(bstudy);
        } else if (*sf) {
            fstudy.output = fout;
            cmd_study_fit(fstudy);
        } else if (*c) {
            corpus.output = cout_path;
            out << format_corpus_table(cmd_corpus(corpus));
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        if (e.code() == ErrorCode::InvalidConfig) {
            err << app.help();
            return kExitUsage;
        }
        return kExitData;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitData;
    }
    return kExitOk;
}

}  // namespace gafault::cli
