#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gafault/classify.hpp"
#include "gafault/pipeline.hpp"
#include "gafault/studies.hpp"
#include "gafault/summary.hpp"
#include "gafault/synth.hpp"

namespace gafault::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

struct ChannelReport {
    std::vector<pipeline::WindowAnalysis> windows;
    std::vector<classify::FaultReport> reports;
    classify::RecordSummary summary;
};

ChannelReport analyze_channel(const std::vector<pipeline::SampleFrame>& frames,
                              const pipeline::WindowConfig& window,
                              const classify::ClassifierConfig& classifier,
                              const classify::SeverityModel& model);

std::string format_window_rows(const ChannelReport& report);

struct AnalyzeOptions {
    std::filesystem::path input;
    /// Outputs go to <prefix>_windows.csv, <prefix>_current_windows.csv and
    /// <prefix>_summary.json.
    std::filesystem::path output_prefix;
    pipeline::WindowConfig window;
    classify::ClassifierConfig classifier;
    /// Peak amplitude used for per-unit scaling on ingestion.
    std::optional<double> pu;
    /// Nominal voltage peak in signal units; ignored under pu.
    double nominal = 1.0;
    /// Nominal current peak; defaults to the voltage setting.
    std::optional<double> current_nominal;
};

struct AnalyzeResult {
    ChannelReport voltage;
    std::optional<ChannelReport> current;
};

AnalyzeResult cmd_analyze(const AnalyzeOptions& opt);

struct SynthOptions {
    synth::FaultScenario scenario;
    std::uint64_t seed = 1;
    std::filesystem::path output;
};

void cmd_synth(const SynthOptions& opt);

struct StudyOptions {
    std::vector<double> noise_levels = synth::kStudyNoiseLevels;
    int trials = 0;  // 0: the study's default
    std::uint64_t seed = 1;
    std::filesystem::path output;
};

synth::BivectorStudy cmd_study_bivector(const StudyOptions& opt);
synth::FitStudy cmd_study_fit(const StudyOptions& opt);

struct CorpusOptions {
    std::vector<double> noise_levels{0.0, 0.01};
    int trials_per_cell = 6;
    std::uint64_t seed = 1;
    /// Phase shift of the RL variant, radians.
    double rl_phase_shift = 0.2;
    pipeline::WindowConfig window;
    classify::ClassifierConfig classifier;
    unsigned threads = 0;
    /// Empty: no CSV.
    std::filesystem::path output;
};

struct CorpusRow {
    double noise = 0.0;
    classify::FaultLabel label = classify::FaultLabel::None;
    int trials = 0;
    int correct = 0;
    double severity_mae = 0.0;  // over all trials of the row
    double accuracy() const { return trials > 0 ? static_cast<double>(correct) / trials : 0.0; }
};

struct CorpusResult {
    std::vector<CorpusRow> rows;
    /// Totals per noise level, in the order given.
    std::vector<CorpusRow> totals;
};

/// One synthetic record per trial; the verdict is the plurality label over
/// windows lying wholly after the fault instant.
CorpusResult cmd_corpus(const CorpusOptions& opt);

std::string format_corpus_table(const CorpusResult& result);

/// Full command-line entry point. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gafault::cli
