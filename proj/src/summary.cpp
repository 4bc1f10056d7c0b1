#include "gafault/summary.hpp"

#include <array>

#include "gafault/error.hpp"

namespace gafault::classify {

FaultLabel dominant_label(std::span<const FaultReport> reports) {
    constexpr std::size_t kLabels = 11;
    std::array<std::size_t, kLabels> count{};
    std::array<std::size_t, kLabels> first{};
    first.fill(reports.size());
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const auto k = static_cast<std::size_t>(reports[i].label);
        if (count[k]++ == 0) first[k] = i;
    }
    std::size_t best = 0;
    for (std::size_t k = 1; k < kLabels; ++k) {
        if (count[k] > count[best] || (count[k] == count[best] && first[k] < first[best])) best = k;
    }
    return static_cast<FaultLabel>(best);
}

RecordSummary summarize(std::span<const pipeline::WindowAnalysis> analyses,
                        std::span<const FaultReport> reports) {
    if (analyses.size() != reports.size()) {
        throw Error(ErrorCode::InvalidConfig, "analyses and reports differ in length");
    }
    RecordSummary out;
    out.windows = reports.size();
    std::size_t onset = reports.size();
    for (std::size_t i = 0; i < reports.size(); ++i) {
        if (reports[i].evidence.ambiguous) ++out.ambiguous_windows;
        if (reports[i].label == FaultLabel::None) continue;
        ++out.faulted_windows;
        if (onset == reports.size()) onset = i;
    }
    if (onset == reports.size()) return out;

    out.onset = analyses[onset].t_start;
    out.detected_at = analyses[onset].t_end;
    out.label = dominant_label(reports.subspan(onset));

    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t i = onset; i < reports.size(); ++i) {
        if (reports[i].label == out.label && reports[i].severity) {
            sum += *reports[i].severity;
            ++n;
        }
    }
    if (n > 0) out.mean_severity = sum / static_cast<double>(n);
    return out;
}

}  // namespace gafault::classify
