#pragma once

#include <cstddef>
#include <vector>

#include "rsteg/code/rs_stream.hpp"
#include "rsteg/cost/costmap.hpp"
#include "rsteg/dm/dither.hpp"
#include "rsteg/jpeg/image.hpp"
#include "rsteg/scheme/config.hpp"

namespace rsteg {

struct EmbedResult {
    CoefImage stego;
    BitVec cover_bits; // domain sequence before embedding, scan order
    BitVec stego_bits; // intended sequence after embedding
    CoverSequence meta;
};

struct ExtractResult {
    BitVec message;
    int rs_failures = 0; // code groups the decoder could not repair
    bool ok = true;
};

// Secret-message length for a cover at a given payload (bits per nonzero AC
// coefficient).
inline std::size_t message_length(const CoefImage& cover, double payload) {
    if (payload <= 0.0 || payload > 1.0) throw Error("scheme: payload out of (0, 1]");
    return static_cast<std::size_t>(payload * static_cast<double>(nonzero_ac_count(cover)));
}

// The schemes fix the cover quality to the channel quality; embedding into
// anything else would put the dither lattice on the wrong grid.
inline void require_cover_quality(const CoefImage& cover, const SchemeConfig& cfg) {
    if (!(cover.table == quant_table(cfg.quality)))
        throw Error("scheme: cover must be compressed at the channel quality");
}

// Flip cost per sequence element: nearest opposite-parity move priced by the
// per-coefficient distortion.
inline std::vector<double> sequence_costs(const Plane& rho, const CoverSequence& seq) {
    std::vector<double> xi(seq.size());
    for (std::size_t e = 0; e < seq.size(); ++e) {
        double d = seq.d_minus[e] < seq.d_plus[e] ? seq.d_minus[e] : seq.d_plus[e];
        xi[e] = dm_cost(rho.data[seq.positions[e]], seq.q[e], d);
    }
    return xi;
}

// Directional variant for generalized (two-sided) embedding.
inline std::vector<double> sequence_costs_directional(const Plane& rho_dir,
                                                      const CoverSequence& seq,
                                                      const std::vector<double>& d) {
    std::vector<double> xi(seq.size());
    for (std::size_t e = 0; e < seq.size(); ++e) {
        xi[e] = dm_cost(rho_dir.data[seq.positions[e]], seq.q[e], d[e]);
    }
    return xi;
}

// Check-code size (in bits) protecting a segment of `seg_bits` stego bits
// under the byte framing: consecutive 8-bit groups, zero-padded tail.
inline std::size_t parity_bits_for(std::size_t seg_bits, const RsCode& code) {
    std::size_t nbytes = (seg_bits + 7) / 8;
    return rs_chunk_count(nbytes, code) * static_cast<std::size_t>(code.nparity) * 8;
}

inline BitVec subrange(const BitVec& v, std::size_t off, std::size_t len) {
    return BitVec(v.begin() + static_cast<std::ptrdiff_t>(off),
                  v.begin() + static_cast<std::ptrdiff_t>(off + len));
}

inline std::vector<double> subrange(const std::vector<double>& v, std::size_t off,
                                    std::size_t len) {
    return std::vector<double>(v.begin() + static_cast<std::ptrdiff_t>(off),
                               v.begin() + static_cast<std::ptrdiff_t>(off + len));
}

} // namespace rsteg
