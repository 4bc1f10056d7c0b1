#include "csv_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string_view>

#include "gafault/error.hpp"

namespace gafault::cli {

namespace {

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        std::string_view field = line.substr(start, comma - start);
        while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
        while (!field.empty() && (field.back() == ' ' || field.back() == '\t')) field.remove_suffix(1);
        out.push_back(field);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

[[noreturn]] void malformed(std::size_t line, const std::string& what) {
    throw Error(ErrorCode::MalformedCsv, "line " + std::to_string(line) + ": " + what);
}

double parse_number(std::string_view field, std::size_t line) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
        malformed(line, "not a number: '" + std::string(field) + "'");
    }
    if (!std::isfinite(v)) malformed(line, "non-finite value '" + std::string(field) + "'");
    return v;
}

}  // namespace

Waveforms parse_waveforms(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    std::size_t line_no = 0;
    std::size_t columns = 0;
    Waveforms out;
    while (std::getline(in, raw)) {
        ++line_no;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        if (raw.empty()) continue;
        const auto fields = split(raw);
        if (columns == 0) {
            const std::vector<std::string_view> v{"t", "va", "vb", "vc"};
            const std::vector<std::string_view> vi{"t", "va", "vb", "vc", "ia", "ib", "ic"};
            if (fields == v || fields == vi) {
                columns = fields.size();
                continue;
            }
            malformed(line_no, "expected header t,va,vb,vc[,ia,ib,ic]");
        }
        if (fields.size() != columns) {
            malformed(line_no, "expected " + std::to_string(columns) + " fields, got " +
                                   std::to_string(fields.size()));
        }
        pipeline::SampleFrame v;
        v.t = parse_number(fields[0], line_no);
        for (std::size_t k = 0; k < 3; ++k) v.ch[k] = parse_number(fields[1 + k], line_no);
        if (!out.voltage.empty() && !(v.t > out.voltage.back().t)) {
            malformed(line_no, "time does not increase");
        }
        out.voltage.push_back(v);
        if (columns == 7) {
            pipeline::SampleFrame i;
            i.t = v.t;
            for (std::size_t k = 0; k < 3; ++k) i.ch[k] = parse_number(fields[4 + k], line_no);
            out.current.push_back(i);
        }
    }
    if (columns == 0) malformed(line_no == 0 ? 1 : line_no, "missing header");
    return out;
}

Waveforms read_waveforms(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::MalformedCsv, "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_waveforms(buf.str());
}

std::string format_waveforms(const std::vector<pipeline::SampleFrame>& frames) {
    std::string out = "t,va,vb,vc\n";
    char line[128];
    for (const auto& f : frames) {
        std::snprintf(line, sizeof line, "%.9g,%.12g,%.12g,%.12g\n", f.t, f.ch[0], f.ch[1], f.ch[2]);
        out += line;
    }
    return out;
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        if (!out.flush()) throw std::runtime_error("cannot write " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace gafault::cli
