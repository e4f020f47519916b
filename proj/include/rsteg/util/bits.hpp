#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rsteg/util/error.hpp"

namespace rsteg {

// Bits are kept one per byte (values 0/1); simple and fast enough at the
// sequence lengths this library works with.
using BitVec = std::vector<std::uint8_t>;

// Mathematical modulo (result in [0, m) for m > 0).
inline int math_mod(long long v, int m) {
    long long r = v % m;
    if (r < 0) r += m;
    return static_cast<int>(r);
}

// Floor division (rounds toward negative infinity).
inline long long math_floordiv(long long v, long long d) {
    long long q = v / d;
    if ((v % d != 0) && ((v < 0) != (d < 0))) --q;
    return q;
}

// MSB-first packing; the tail byte is zero padded.
inline std::vector<std::uint8_t> pack_bits(const BitVec& bits) {
    std::vector<std::uint8_t> out((bits.size() + 7) / 8, 0);
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i]) out[i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
    }
    return out;
}

inline BitVec unpack_bits(const std::vector<std::uint8_t>& bytes, std::size_t nbits) {
    if (nbits > bytes.size() * 8) throw Error("unpack_bits: not enough bytes");
    BitVec out(nbits);
    for (std::size_t i = 0; i < nbits; ++i) {
        out[i] = (bytes[i / 8] >> (7 - i % 8)) & 1u;
    }
    return out;
}

inline std::size_t hamming_distance(const BitVec& a, const BitVec& b) {
    std::size_t n = a.size() < b.size() ? a.size() : b.size();
    std::size_t d = (a.size() > b.size() ? a.size() : b.size()) - n;
    for (std::size_t i = 0; i < n; ++i) d += (a[i] != b[i]) ? 1 : 0;
    return d;
}

} // namespace rsteg
