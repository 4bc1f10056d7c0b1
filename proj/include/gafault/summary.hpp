#pragma once

// Record-level verdict from per-window reports.

#include <cstddef>
#include <optional>
#include <span>

#include "gafault/classify.hpp"
#include "gafault/pipeline.hpp"

namespace gafault::classify {

struct RecordSummary {
    /// Plurality label over windows from onset on; None when nothing fired.
    FaultLabel label = FaultLabel::None;
    /// Start and end of the first window with a label other than None.
    std::optional<double> onset;
    std::optional<double> detected_at;
    /// Mean severity over windows carrying the dominant label.
    std::optional<double> mean_severity;
    std::size_t windows = 0;
    std::size_t faulted_windows = 0;
    std::size_t ambiguous_windows = 0;
};

/// Plurality vote; ties go to the label seen first. Empty input gives None.
FaultLabel dominant_label(std::span<const FaultReport> reports);

/// analyses and reports must be index-aligned.
RecordSummary summarize(std::span<const pipeline::WindowAnalysis> analyses,
                        std::span<const FaultReport> reports);

}  // namespace gafault::classify
