#pragma once

#include "rsteg/channel/recompress.hpp"
#include "rsteg/code/scramble.hpp"
#include "rsteg/code/segment.hpp"
#include "rsteg/code/stc.hpp"
#include "rsteg/cost/juniward.hpp"
#include "rsteg/scheme/common.hpp"

// The dither-modulation scheme with double-layer check codes and
// re-compression stabilization. The scrambled cover sequence is split
// 15:3:1; the message goes into the first segment, check codes of the first
// segment's stego bits into the second, and check codes of the second
// segment's stego bits into the third. After writing the coefficients, the
// image is pushed toward a re-compression fixed point so the channel has as
// little left to disturb as possible.

namespace rsteg {

// `rho_hint` lets callers reuse a precomputed cost map for this cover.
inline EmbedResult embed_proposed(const CoefImage& cover, const BitVec& message,
                                  const SchemeConfig& cfg, const Plane* rho_hint = nullptr) {
    require_cover_quality(cover, cfg);
    Plane rho = rho_hint ? *rho_hint : juniward_costs(cover);
    CoverSequence seq = extract_cover(cover, cfg.domain);
    std::vector<double> xi = sequence_costs(rho, seq);

    const SegmentSplit split = segment_split(seq.size());
    if (message.size() > split.l1)
        throw CapacityError("scheme: message exceeds segment capacity");
    const std::uint64_t skey = derive_seed(cfg.key, keytag::kScramble);
    BitVec sbits = scramble(seq.bits, skey);
    std::vector<double> sxi = scramble(xi, skey);

    const RsCode rs(cfg.rs_t);
    StcResult r1 = stc_embed(subrange(sbits, 0, split.l1), subrange(sxi, 0, split.l1),
                             message, segment_stc(cfg, keytag::kSegment1));
    auto p1_bytes = rs_parity_stream(pack_bits(r1.stego), rs);
    BitVec p1 = unpack_bits(p1_bytes, p1_bytes.size() * 8);
    if (p1.size() > split.l2)
        throw CapacityError("scheme: first-layer check codes exceed segment capacity");
    StcResult r2 =
        stc_embed(subrange(sbits, split.l1, split.l2), subrange(sxi, split.l1, split.l2),
                  p1, segment_stc(cfg, keytag::kSegment2));
    BitVec s3 = subrange(sbits, split.l1 + split.l2, split.l3);
    if (cfg.double_layer) {
        auto p2_bytes = rs_parity_stream(pack_bits(r2.stego), rs);
        BitVec p2 = unpack_bits(p2_bytes, p2_bytes.size() * 8);
        if (p2.size() > split.l3)
            throw CapacityError("scheme: second-layer check codes exceed segment capacity");
        s3 = stc_embed(s3, subrange(sxi, split.l1 + split.l2, split.l3), p2,
                       segment_stc(cfg, keytag::kSegment3))
                 .stego;
    }

    BitVec s_stego = r1.stego;
    s_stego.insert(s_stego.end(), r2.stego.begin(), r2.stego.end());
    s_stego.insert(s_stego.end(), s3.begin(), s3.end());

    EmbedResult out;
    out.cover_bits = seq.bits;
    out.stego_bits = descramble(s_stego, skey);
    CoefImage intermediate = apply_stego(cover, seq, out.stego_bits);
    out.stego = stabilize(intermediate, out.stego_bits, seq,
                          ChannelSpec{cfg.quality, 1}, cfg.modification_passes);
    out.meta = std::move(seq);
    return out;
}

inline ExtractResult extract_proposed(const CoefImage& stego, const SchemeConfig& cfg,
                                      std::size_t msg_len) {
    const QuantTable lattice = quant_table(cfg.quality);
    BitVec bits = extract_bits(stego, cfg.domain, lattice);
    const SegmentSplit split = segment_split(bits.size());
    const std::uint64_t skey = derive_seed(cfg.key, keytag::kScramble);
    BitVec sbits = scramble(bits, skey);
    BitVec s1 = subrange(sbits, 0, split.l1);
    BitVec s2 = subrange(sbits, split.l1, split.l2);
    BitVec s3 = subrange(sbits, split.l1 + split.l2, split.l3);

    const RsCode rs(cfg.rs_t);
    // third segment carries the checks of the second; correct inward
    BitVec s2c = s2;
    RsStreamResult c2;
    if (cfg.double_layer) {
        BitVec p2 = stc_extract(s3, parity_bits_for(split.l2, rs),
                                segment_stc(cfg, keytag::kSegment3));
        c2 = rs_correct_stream(pack_bits(s2), pack_bits(p2), rs);
        s2c = unpack_bits(c2.data, split.l2);
    }
    BitVec p1 = stc_extract(s2c, parity_bits_for(split.l1, rs),
                            segment_stc(cfg, keytag::kSegment2));
    RsStreamResult c1 = rs_correct_stream(pack_bits(s1), pack_bits(p1), rs);
    BitVec s1c = unpack_bits(c1.data, split.l1);

    ExtractResult out;
    out.message = stc_extract(s1c, msg_len, segment_stc(cfg, keytag::kSegment1));
    out.rs_failures = c1.failures + c2.failures;
    out.ok = out.rs_failures == 0;
    return out;
}

} // namespace rsteg
