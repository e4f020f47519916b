#pragma once

#include "rsteg/code/stc_ternary.hpp"
#include "rsteg/cost/juniward.hpp"
#include "rsteg/scheme/common.hpp"

// Generalized dither-modulation baseline: asymmetric costs from rounding side
// information, expanded E_678 embedding domain, message wrapped in an RS code
// and embedded with ternary STCs. No scrambling, no stabilization stage.

namespace rsteg {

// `precover` is the spatial-domain image the cover was compressed from; its
// unquantized DCT plane tells the embedder which direction each coefficient
// was rounded. Without it the cover is its own reference and the costs stay
// symmetric.
inline EmbedResult embed_gmas(const CoefImage& cover, const BitVec& message,
                              const SchemeConfig& cfg,
                              const PixelImage* precover = nullptr,
                              const Plane* rho_hint = nullptr) {
    require_cover_quality(cover, cfg);
    Plane rho = rho_hint ? *rho_hint : juniward_costs(cover);
    Plane reference;
    if (precover) {
        reference = dct_plane(*precover);
        if (reference.height != cover.padded_height() ||
            reference.width != cover.padded_width())
            throw Error("scheme: precover size mismatch");
    } else {
        reference = Plane(cover.padded_height(), cover.padded_width());
        for (int r = 0; r < reference.height; ++r)
            for (int c = 0; c < reference.width; ++c)
                reference.at(r, c) = cover.at(r, c) * cover.table.step(r % 8, c % 8);
    }
    AsymCostMap asym = asymmetric_costs(rho, cover, reference, cfg.alpha);

    CoverSequence seq = extract_cover(cover, cfg.domain);
    std::vector<double> xi_plus = sequence_costs_directional(asym.rho_plus, seq, seq.d_plus);
    std::vector<double> xi_minus =
        sequence_costs_directional(asym.rho_minus, seq, seq.d_minus);
    std::vector<long long> values(seq.size());
    for (std::size_t e = 0; e < seq.size(); ++e) values[e] = cover.coef[seq.positions[e]];

    const RsCode code(cfg.gmas_rs_t);
    auto cw = rs_encode_stream(pack_bits(message), code);
    BitVec mprime = unpack_bits(cw, cw.size() * 8);
    TernarySplit ts = ternary_split(mprime.size());
    if (ts.m1 > seq.size())
        throw CapacityError("scheme: encoded message exceeds cover capacity");
    TernaryResult tr = stc_embed_ternary(values, xi_plus, xi_minus, mprime,
                                         segment_stc(cfg, keytag::kGmas));

    EmbedResult out;
    out.stego = cover;
    out.cover_bits = seq.bits;
    out.stego_bits.resize(seq.size());
    for (std::size_t e = 0; e < seq.size(); ++e) {
        out.stego.coef[seq.positions[e]] = static_cast<std::int16_t>(tr.values[e]);
        out.stego_bits[e] = static_cast<std::uint8_t>(interval_bit(tr.values[e]));
    }
    out.meta = std::move(seq);
    return out;
}

inline ExtractResult extract_gmas(const CoefImage& stego, const SchemeConfig& cfg,
                                  std::size_t msg_len) {
    const QuantTable lattice = quant_table(cfg.quality);
    auto values = extract_values(stego, cfg.domain, lattice);
    const RsCode code(cfg.gmas_rs_t);
    const std::size_t msg_bytes = (msg_len + 7) / 8;
    const std::size_t enc_bits = rs_encoded_size(msg_bytes, code) * 8;
    BitVec mprime = stc_extract_ternary(values, enc_bits, segment_stc(cfg, keytag::kGmas));
    RsStreamResult dec = rs_decode_stream(pack_bits(mprime), msg_bytes, code);
    ExtractResult out;
    out.message = unpack_bits(dec.data, msg_len);
    out.rs_failures = dec.failures;
    out.ok = dec.failures == 0;
    return out;
}

} // namespace rsteg
