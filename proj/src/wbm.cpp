#include "qwbm/wbm.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>

namespace qwbm {

namespace {

const std::array<std::string, kNumClasses> kLabelNames = {
    "Normal", "Center", "Doughnut", "Edge-Loc", "Edge-Ring",
    "Loc",    "Near-Full", "Scratch", "Random",
};

int band_start(int k) { return kRawDim * k / kCompressedDim; }

int parse_cell(std::string_view tok, int line_no, int max_value) {
    int v = -1;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size() || v < 0 || v > max_value)
        throw ParseError("line " + std::to_string(line_no) + ": bad cell '" +
                         std::string(tok) + "'");
    return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        std::size_t next = s.find(sep, pos);
        if (next == std::string_view::npos) {
            out.push_back(s.substr(pos));
            return out;
        }
        out.push_back(s.substr(pos, next - pos));
        pos = next + 1;
    }
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

}  // namespace

const std::string& label_name(DefectLabel label) {
    return kLabelNames[static_cast<int>(label)];
}

DefectLabel label_from_name(const std::string& name) {
    for (int i = 0; i < kNumClasses; ++i)
        if (kLabelNames[i] == name) return static_cast<DefectLabel>(i);
    throw UnknownLabel("unknown defect label '" + name + "'");
}

BinaryWaferMap bivalue(const RawWaferMap& raw, BivalueStats* stats) {
    BinaryWaferMap out;
    bool any_defect = false;
    for (int r = 0; r < kRawDim; ++r)
        for (int c = 0; c < kRawDim; ++c) {
            out.grid[r][c] = raw.grid[r][c] == 2 ? 1 : 0;
            any_defect |= out.grid[r][c] != 0;
        }
    if (!any_defect && stats) ++stats->maps_without_defects;
    return out;
}

CompressedMap compress(const BinaryWaferMap& bin) {
    CompressedMap out;
    for (int br = 0; br < kCompressedDim; ++br)
        for (int bc = 0; bc < kCompressedDim; ++bc) {
            int r0 = band_start(br), r1 = band_start(br + 1);
            int c0 = band_start(bc), c1 = band_start(bc + 1);
            int ones = 0;
            for (int r = r0; r < r1; ++r)
                for (int c = c0; c < c1; ++c) ones += bin.grid[r][c];
            int block = (r1 - r0) * (c1 - c0);
            out.grid[br][bc] = 2 * ones >= block ? 1 : 0;
        }
    return out;
}

FlatSample flatten(const CompressedMap& c, std::optional<DefectLabel> label) {
    FlatSample s;
    s.bits.resize(kFlatLen);
    for (int r = 0; r < kCompressedDim; ++r)
        for (int col = 0; col < kCompressedDim; ++col)
            s.bits[kCompressedDim * r + col] = c.grid[r][col];
    s.label = label;
    return s;
}

CompressedMap unflatten(const FlatSample& s) {
    if (static_cast<int>(s.bits.size()) != kFlatLen)
        throw DimensionMismatch("flat sample must have 64 bits");
    CompressedMap c;
    for (int r = 0; r < kCompressedDim; ++r)
        for (int col = 0; col < kCompressedDim; ++col)
            c.grid[r][col] = s.bits[kCompressedDim * r + col];
    return c;
}

std::vector<RawWaferMap> parse_wbm_txt(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot read " + path);
    std::vector<RawWaferMap> maps;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        std::size_t sep = line.find(';');
        if (sep == std::string::npos)
            throw ParseError("line " + std::to_string(line_no) + ": missing ';'");
        RawWaferMap map;
        map.label = label_from_name(line.substr(0, sep));
        auto cells = split(std::string_view(line).substr(sep + 1), ',');
        if (static_cast<int>(cells.size()) != kRawDim * kRawDim)
            throw ParseError("line " + std::to_string(line_no) + ": expected " +
                             std::to_string(kRawDim * kRawDim) + " cells, got " +
                             std::to_string(cells.size()));
        for (int i = 0; i < kRawDim * kRawDim; ++i)
            map.grid[i / kRawDim][i % kRawDim] =
                static_cast<std::uint8_t>(parse_cell(cells[i], line_no, 2));
        maps.push_back(map);
    }
    return maps;
}

std::vector<FlatSample> parse_flat_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot read " + path);
    std::vector<FlatSample> samples;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        auto fields = split(line, ',');
        if (static_cast<int>(fields.size()) != kFlatLen + 1)
            throw ParseError("line " + std::to_string(line_no) + ": expected label plus " +
                             std::to_string(kFlatLen) + " bits");
        FlatSample s;
        s.label = label_from_name(std::string(fields[0]));
        s.bits.resize(kFlatLen);
        for (int i = 0; i < kFlatLen; ++i)
            s.bits[i] = static_cast<std::uint8_t>(parse_cell(fields[i + 1], line_no, 1));
        samples.push_back(std::move(s));
    }
    return samples;
}

void write_flat_csv(const std::string& path, const std::vector<FlatSample>& samples) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write " + path);
    for (const FlatSample& s : samples) {
        if (!s.label) throw ValidationError("FLAT-CSV requires labeled samples");
        out << label_name(*s.label);
        for (std::uint8_t b : s.bits) out << ',' << int(b);
        out << '\n';
    }
}

}  // namespace qwbm
