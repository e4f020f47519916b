#pragma once

#include <cmath>
#include <cstdint>

#include "rsteg/dm/dither.hpp"
#include "rsteg/jpeg/image.hpp"
#include "rsteg/util/error.hpp"

// Lossy-channel simulation: JPEG re-compression at a channel quality factor,
// plus the stabilization stage that makes a stego image (approximately) a
// fixed point of that re-compression.

namespace rsteg {

struct ChannelSpec {
    int quality = 65;
    int iterations = 1;
};

inline CoefImage recompress(const CoefImage& img, const ChannelSpec& spec) {
    if (spec.quality < 1 || spec.quality > 100) throw Error("channel: quality out of range");
    if (spec.iterations < 1) throw Error("channel: iterations must be >= 1");
    QuantTable table = quant_table(spec.quality);
    CoefImage out = img;
    for (int it = 0; it < spec.iterations; ++it) {
        PixelImage px = decompress(out);
        out = compress(px, table);
    }
    return out;
}

// One stabilization pass. Re-compress the intermediate image, re-extract the
// stego sequence, and wherever a bit no longer matches the target, pull the
// coefficient back to the middle coordinate of the interval the pre-attack
// value occupied (the nearest target-parity interval if the caller handed us
// an intermediate that was itself off-target). Coefficients outside the
// embedding domain keep their re-compressed values: those drifted positions
// are the ones re-compression has already pushed toward a fixed point, which
// is exactly why the output survives the next attack better than the input.
inline CoefImage modification_pass(const CoefImage& intermediate, const BitVec& target,
                                   const CoverSequence& meta, const ChannelSpec& spec) {
    if (target.size() != meta.size()) throw Error("channel: target/meta length mismatch");
    CoefImage att = recompress(intermediate, ChannelSpec{spec.quality, 1});
    const int pw = att.padded_width();
    for (std::size_t e = 0; e < meta.size(); ++e) {
        std::uint32_t p = meta.positions[e];
        int i = static_cast<int>(p / static_cast<std::uint32_t>(pw)) % 8;
        int j = static_cast<int>(p % static_cast<std::uint32_t>(pw)) % 8;
        double q_emb = meta.q[e];
        double q_att = att.table.step(i, j);
        double v_att = static_cast<double>(att.coef[p]) * q_att;
        if (interval_bit(interval_index(v_att, q_emb)) == target[e]) continue;
        double v_pre = static_cast<double>(intermediate.coef[p]) *
                       intermediate.table.step(i, j);
        long long n_fix = interval_index(v_pre, q_emb);
        if (interval_bit(n_fix) != target[e]) {
            // off-target intermediate: nearest interval with the right parity
            double below = v_pre - interval_middle(n_fix - 1, q_emb);
            double above = interval_middle(n_fix + 1, q_emb) - v_pre;
            n_fix += (above < below || (above == below && n_fix < 0)) ? 1 : -1;
        }
        long long c = round_half_away(interval_middle(n_fix, q_emb) / q_att);
        if (c > 32767) c = 32767;
        if (c < -32768) c = -32768;
        att.coef[p] = static_cast<std::int16_t>(c);
    }
    return att;
}

inline CoefImage stabilize(const CoefImage& intermediate, const BitVec& target,
                           const CoverSequence& meta, const ChannelSpec& spec, int passes) {
    if (passes < 0) throw Error("channel: negative pass count");
    CoefImage out = intermediate;
    for (int p = 0; p < passes; ++p) out = modification_pass(out, target, meta, spec);
    return out;
}

} // namespace rsteg
