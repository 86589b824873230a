#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qwbm/errors.hpp"

namespace qwbm {

inline constexpr int kRawDim = 52;
inline constexpr int kCompressedDim = 8;
inline constexpr int kFlatLen = kCompressedDim * kCompressedDim;

/// The nine single-type defect classes, in canonical index order.
enum class DefectLabel : int {
    Normal = 0,
    Center,
    Doughnut,
    EdgeLoc,
    EdgeRing,
    Loc,
    NearFull,
    Scratch,
    Random,
};

inline constexpr int kNumClasses = 9;

const std::string& label_name(DefectLabel label);
DefectLabel label_from_name(const std::string& name);  // throws UnknownLabel

/// 52x52 trivalued grid: 0 no chip, 1 good chip, 2 defective chip.
struct RawWaferMap {
    std::array<std::array<std::uint8_t, kRawDim>, kRawDim> grid{};
    DefectLabel label = DefectLabel::Normal;
};

struct BinaryWaferMap {
    std::array<std::array<std::uint8_t, kRawDim>, kRawDim> grid{};
};

struct CompressedMap {
    std::array<std::array<std::uint8_t, kCompressedDim>, kCompressedDim> grid{};
};

struct FlatSample {
    std::vector<std::uint8_t> bits;  // length 64
    std::optional<DefectLabel> label;
};

struct BivalueStats {
    long long maps_without_defects = 0;  // inputs containing no 2-cells
};

/// Cell -> 1 iff the raw cell marks a defect (value 2). Inputs with no
/// defect cell at all bump the misuse counter but are not rejected.
BinaryWaferMap bivalue(const RawWaferMap& raw, BivalueStats* stats = nullptr);

/// Majority-vote 52x52 -> 8x8. Band boundaries are floor(52*k/8) in each
/// dimension; ties in even-sized blocks map to 1.
CompressedMap compress(const BinaryWaferMap& bin);

/// Row-major flattening: bits[8*row + col] = grid[row][col].
FlatSample flatten(const CompressedMap& c, std::optional<DefectLabel> label = {});
CompressedMap unflatten(const FlatSample& s);

enum class DatasetFormat { WbmTxt, FlatCsv };

/// WBM-TXT v1: one `LABEL;c0,...,c2703` line per map, row-major cells.
std::vector<RawWaferMap> parse_wbm_txt(const std::string& path);
/// FLAT-CSV v1: one `LABEL,b0,...,b63` line per sample.
std::vector<FlatSample> parse_flat_csv(const std::string& path);
void write_flat_csv(const std::string& path, const std::vector<FlatSample>& samples);

}  // namespace qwbm
