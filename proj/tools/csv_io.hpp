#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "gafault/pipeline.hpp"

namespace gafault::cli {

struct Waveforms {
    std::vector<pipeline::SampleFrame> voltage;
    /// Empty unless the file carries ia, ib, ic.
    std::vector<pipeline::SampleFrame> current;
};

/// Header `t,va,vb,vc` with optional `ia,ib,ic`. Throws MalformedCsv with the
/// offending line number.
Waveforms parse_waveforms(const std::string& text);
Waveforms read_waveforms(const std::filesystem::path& path);

std::string format_waveforms(const std::vector<pipeline::SampleFrame>& frames);

/// Writes to a sibling temporary and renames it over path.
void write_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace gafault::cli
