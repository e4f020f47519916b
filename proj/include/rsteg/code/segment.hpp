#pragma once

#include <cstddef>

#include "rsteg/util/error.hpp"

namespace rsteg {

// 15:3:1 split of a cover sequence into message / check / second-check
// segments: l3 = floor(lc/19), l2 = 3*l3, l1 = lc - l2 - l3. Rounding slack
// goes to the message segment.
struct SegmentSplit {
    std::size_t l1 = 0;
    std::size_t l2 = 0;
    std::size_t l3 = 0;
};

inline SegmentSplit segment_split(std::size_t lc) {
    if (lc < 19) throw Error("segment_split: cover sequence shorter than 19");
    SegmentSplit s;
    s.l3 = lc / 19;
    s.l2 = 3 * s.l3;
    s.l1 = lc - s.l2 - s.l3;
    return s;
}

// Two-way split for group-checked embedding: with groups of l_r message bits
// and k check bits per group, l_e = lc - ceil(lc/l_r)*k bits carry payload and
// the rest carry the group checks.
inline std::size_t edmas_split(std::size_t lc, std::size_t l_r, std::size_t k) {
    if (l_r == 0) throw Error("edmas_split: zero group length");
    std::size_t groups = (lc + l_r - 1) / l_r;
    std::size_t checks = groups * k;
    if (checks >= lc) throw Error("edmas_split: check codes exceed cover capacity");
    return lc - checks;
}

} // namespace rsteg
