#pragma once

#include <cstdint>
#include <vector>

#include "rsteg/util/bits.hpp"
#include "rsteg/util/error.hpp"

// Bitwise CRC check codes over short message groups. The generator polynomial
// is given MSB-first including both end terms, e.g. x^8+x^2+x+1 = 0x107.
// Groups are short enough that the code can also *correct* a single bit flip
// by matching the syndrome against every one-bit error pattern.

namespace rsteg {

inline int crc_degree(std::uint32_t poly) {
    if (poly < 2) throw Error("crc: bad generator polynomial");
    int d = 31;
    while (!(poly >> d & 1)) --d;
    return d;
}

// Remainder of bits * x^degree mod poly, returned as `degree` check bits
// (MSB first).
inline BitVec crc_encode(const BitVec& bits, std::uint32_t poly) {
    int deg = crc_degree(poly);
    std::uint32_t reg = 0;
    std::uint32_t mask = (1u << deg) - 1;
    for (std::uint8_t b : bits) {
        std::uint32_t top = (reg >> (deg - 1)) & 1;
        reg = ((reg << 1) | (b & 1)) & mask;
        if (top) reg ^= poly & mask;
    }
    for (int i = 0; i < deg; ++i) {
        std::uint32_t top = (reg >> (deg - 1)) & 1;
        reg = (reg << 1) & mask;
        if (top) reg ^= poly & mask;
    }
    BitVec out(deg);
    for (int i = 0; i < deg; ++i) out[i] = (reg >> (deg - 1 - i)) & 1;
    return out;
}

inline bool crc_check(const BitVec& bits, const BitVec& check, std::uint32_t poly) {
    return crc_encode(bits, poly) == check;
}

// Try to repair a single bit flip anywhere in bits||check. Returns true when
// the group is consistent after at most one flip; multi-bit damage is left in
// place and reported as failure.
inline bool crc_correct_single(BitVec& bits, BitVec& check, std::uint32_t poly) {
    if (crc_check(bits, check, poly)) return true;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        bits[i] ^= 1;
        if (crc_check(bits, check, poly)) return true;
        bits[i] ^= 1;
    }
    for (std::size_t i = 0; i < check.size(); ++i) {
        check[i] ^= 1;
        if (crc_check(bits, check, poly)) return true;
        check[i] ^= 1;
    }
    return false;
}

} // namespace rsteg
