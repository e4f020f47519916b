#pragma once

#include <array>
#include <cstdint>

#include "rsteg/util/error.hpp"

namespace rsteg {

// Standard luminance base quantization table (row-major).
inline constexpr std::array<std::uint16_t, 64> kLumaBaseTable = {
    16, 11, 10, 16, 24,  40,  51,  61,
    12, 12, 14, 19, 26,  58,  60,  55,
    14, 13, 16, 24, 40,  57,  69,  56,
    14, 17, 22, 29, 51,  87,  80,  62,
    18, 22, 37, 56, 68,  109, 103, 77,
    24, 35, 55, 64, 81,  104, 113, 92,
    49, 64, 78, 87, 103, 121, 120, 101,
    72, 92, 95, 98, 112, 100, 103, 99,
};

// 8x8 quantization table. `quality` is the IJG quality the entries were
// derived from, or 0 when the table came from a file with a custom table.
struct QuantTable {
    std::array<std::uint16_t, 64> entries{};
    int quality = 0;

    // 0-indexed frequency position; (0,0) is DC.
    std::uint16_t step(int i, int j) const { return entries[i * 8 + j]; }

    bool operator==(const QuantTable& o) const { return entries == o.entries; }
    bool operator!=(const QuantTable& o) const { return !(*this == o); }
};

// IJG quality scaling of the luminance base table. Every entry ends up in
// [1, 255], so quality 100 gives the all-ones table.
inline QuantTable quant_table(int quality) {
    if (quality < 1 || quality > 100) throw Error("quant_table: quality out of range");
    int s = quality < 50 ? 5000 / quality : 200 - 2 * quality;
    QuantTable t;
    t.quality = quality;
    for (int k = 0; k < 64; ++k) {
        long v = (static_cast<long>(kLumaBaseTable[k]) * s + 50) / 100;
        if (v < 1) v = 1;
        if (v > 255) v = 255;
        t.entries[k] = static_cast<std::uint16_t>(v);
    }
    return t;
}

// Match a raw table back to the IJG quality that generates it, or 0.
inline int match_ijg_quality(const std::array<std::uint16_t, 64>& entries) {
    for (int q = 1; q <= 100; ++q) {
        if (quant_table(q).entries == entries) return q;
    }
    return 0;
}

} // namespace rsteg
