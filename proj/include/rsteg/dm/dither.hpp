#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "rsteg/cost/costmap.hpp"
#include "rsteg/dm/domain.hpp"
#include "rsteg/jpeg/image.hpp"
#include "rsteg/util/bits.hpp"
#include "rsteg/util/error.hpp"

// Dither modulation over quantizer cells.
//
// The de-quantized axis is divided into intervals of width q centered on the
// reconstruction points: interval n covers [(n-1/2)q, (n+1/2)q) and its middle
// coordinate is n*q. A coefficient carries the parity of its interval index
// (odd interval = bit 1). Stored coefficients sit exactly at interval middles,
// which is what makes the representation maximally robust to requantization
// with the same step: the value must drift by more than q/2 before the parity
// flips. Flipping a bit means moving to the middle of an adjacent interval,
// i.e. a +-1 change of the quantized coefficient; both neighbors are at
// distance q, so the generalized (two-sided) modification distances of an
// intact coefficient are d- = d+ = q and always sum to 2q.

namespace rsteg {

// Interval index of a de-quantized value (ties round away from zero, the
// pipeline-wide rounding rule).
inline long long interval_index(double v, double q) {
    if (q <= 0.0) throw Error("dither: nonpositive quantization step");
    return std::llround(v / q);
}

inline int interval_bit(long long n) { return math_mod(n, 2); }

// Middle coordinate of interval n.
inline double interval_middle(long long n, double q) { return static_cast<double>(n) * q; }

// Distances from v to the middles of the two neighboring opposite-parity
// intervals (below and above own interval).
struct DitherDistances {
    long long n = 0; // own interval
    int bit = 0;
    double d_minus = 0.0;
    double d_plus = 0.0;

    double d_nearest() const { return d_minus < d_plus ? d_minus : d_plus; }
};

inline DitherDistances dither_distances(double v, double q) {
    DitherDistances out;
    out.n = interval_index(v, q);
    out.bit = interval_bit(out.n);
    out.d_minus = v - interval_middle(out.n - 1, q);
    out.d_plus = interval_middle(out.n + 1, q) - v;
    return out;
}

// Cover sequence extracted from a coefficient image: bits plus modification
// geometry at every domain position, in scan order.
struct CoverSequence {
    std::vector<std::uint32_t> positions; // flat indices into the padded plane
    BitVec bits;
    std::vector<double> q;       // quantization step per element
    std::vector<double> d_minus; // distance to lower opposite-parity middle
    std::vector<double> d_plus;  // distance to upper opposite-parity middle

    std::size_t size() const { return positions.size(); }
};

// Quantization steps come from the image's own table: the scheme fixes the
// cover quality to the channel quality, so the cover table is the robust step
// source.
inline CoverSequence extract_cover(const CoefImage& img, const DomainSpec& domain) {
    CoverSequence seq;
    seq.positions = domain_positions(domain, img);
    seq.bits.resize(seq.positions.size());
    seq.q.resize(seq.positions.size());
    seq.d_minus.resize(seq.positions.size());
    seq.d_plus.resize(seq.positions.size());
    int pw = img.padded_width();
    for (std::size_t e = 0; e < seq.positions.size(); ++e) {
        std::uint32_t p = seq.positions[e];
        int i = static_cast<int>(p / pw) % 8;
        int j = static_cast<int>(p % pw) % 8;
        double q = img.table.step(i, j);
        double v = static_cast<double>(img.coef[p]) * q;
        DitherDistances dd = dither_distances(v, q);
        seq.bits[e] = static_cast<std::uint8_t>(dd.bit);
        seq.q[e] = q;
        seq.d_minus[e] = dd.d_minus;
        seq.d_plus[e] = dd.d_plus;
    }
    return seq;
}

// Bits only (receiver side).
inline BitVec extract_bits(const CoefImage& img, const DomainSpec& domain) {
    auto pos = domain_positions(domain, img);
    BitVec bits(pos.size());
    for (std::size_t e = 0; e < pos.size(); ++e) {
        bits[e] = static_cast<std::uint8_t>(math_mod(img.coef[pos[e]], 2));
    }
    return bits;
}

// Interval indices of the domain coefficients w.r.t. a reference lattice. The
// de-quantized value comes from the image's own table, the interval geometry
// from `lattice` (the embedding-time table); with matched tables the index is
// the stored coefficient itself. This is how the receiver reads an image that
// came back from the channel.
inline std::vector<long long> extract_values(const CoefImage& img, const DomainSpec& domain,
                                             const QuantTable& lattice) {
    auto pos = domain_positions(domain, img);
    std::vector<long long> values(pos.size());
    int pw = img.padded_width();
    for (std::size_t e = 0; e < pos.size(); ++e) {
        std::uint32_t p = pos[e];
        int i = static_cast<int>(p / static_cast<std::uint32_t>(pw)) % 8;
        int j = static_cast<int>(p % static_cast<std::uint32_t>(pw)) % 8;
        double v = static_cast<double>(img.coef[p]) * img.table.step(i, j);
        values[e] = interval_index(v, lattice.step(i, j));
    }
    return values;
}

inline BitVec extract_bits(const CoefImage& img, const DomainSpec& domain,
                           const QuantTable& lattice) {
    auto values = extract_values(img, domain, lattice);
    BitVec bits(values.size());
    for (std::size_t e = 0; e < values.size(); ++e) {
        bits[e] = static_cast<std::uint8_t>(interval_bit(values[e]));
    }
    return bits;
}

// Direction choice per element for generalized embedding: +1, -1, or 0 (keep).
using Directions = std::vector<std::int8_t>;

// Write stego bits into the cover: where the stego bit differs, the
// coefficient moves to the middle of an adjacent opposite-parity interval.
// Without explicit directions the move is toward zero (at zero: +1), which
// keeps coefficient magnitudes small. `directions`, when given, must flip
// parity exactly where stego != cover. Re-extracting from the result yields
// `stego` exactly.
inline CoefImage apply_stego(const CoefImage& cover, const CoverSequence& seq,
                             const BitVec& stego, const Directions* directions = nullptr) {
    if (stego.size() != seq.size()) throw Error("apply_stego: bit count mismatch");
    if (directions && directions->size() != seq.size())
        throw Error("apply_stego: direction count mismatch");
    CoefImage out = cover;
    for (std::size_t e = 0; e < seq.size(); ++e) {
        int want = stego[e];
        std::int16_t& c = out.coef[seq.positions[e]];
        if (directions) {
            int d = (*directions)[e];
            if (d != 0) c = static_cast<std::int16_t>(c + d);
            if (math_mod(c, 2) != want) throw Error("apply_stego: directions break parity");
            continue;
        }
        if (math_mod(c, 2) == want) continue;
        c = static_cast<std::int16_t>(c > 0 ? c - 1 : c + 1); // toward zero; 0 -> +1
    }
    return out;
}

} // namespace rsteg
