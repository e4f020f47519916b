#pragma once

#include "rsteg/code/crc.hpp"
#include "rsteg/code/scramble.hpp"
#include "rsteg/code/segment.hpp"
#include "rsteg/code/stc.hpp"
#include "rsteg/cost/juniward.hpp"
#include "rsteg/scheme/common.hpp"

// Expanded-domain baseline with single-layer CRC checks: the scrambled cover
// sequence is split into a message part of l_e bits and a check part holding
// one CRC word per l_r-bit group of the message part's stego bits. The
// receiver retries each failing group with every single-bit flip. No
// stabilization stage.

namespace rsteg {

inline EmbedResult embed_edmas(const CoefImage& cover, const BitVec& message,
                               const SchemeConfig& cfg, const Plane* rho_hint = nullptr) {
    require_cover_quality(cover, cfg);
    Plane rho = rho_hint ? *rho_hint : juniward_costs(cover);
    CoverSequence seq = extract_cover(cover, cfg.domain);
    std::vector<double> xi = sequence_costs(rho, seq);

    const std::size_t lc = seq.size();
    const std::size_t k = static_cast<std::size_t>(crc_degree(cfg.crc.poly));
    const std::size_t lr = static_cast<std::size_t>(cfg.crc.group_bits);
    const std::size_t le = edmas_split(lc, lr, k);
    if (message.size() > le)
        throw CapacityError("scheme: message exceeds segment capacity");
    const std::uint64_t skey = derive_seed(cfg.key, keytag::kScramble);
    BitVec sbits = scramble(seq.bits, skey);
    std::vector<double> sxi = scramble(xi, skey);

    StcResult r1 = stc_embed(subrange(sbits, 0, le), subrange(sxi, 0, le), message,
                             segment_stc(cfg, keytag::kEdmasMessage));
    BitVec checks;
    for (std::size_t off = 0; off < le; off += lr) {
        std::size_t glen = le - off < lr ? le - off : lr;
        BitVec chk = crc_encode(subrange(r1.stego, off, glen), cfg.crc.poly);
        checks.insert(checks.end(), chk.begin(), chk.end());
    }
    StcResult r2 = stc_embed(subrange(sbits, le, lc - le), subrange(sxi, le, lc - le),
                             checks, segment_stc(cfg, keytag::kEdmasCheck));

    BitVec s_stego = r1.stego;
    s_stego.insert(s_stego.end(), r2.stego.begin(), r2.stego.end());

    EmbedResult out;
    out.cover_bits = seq.bits;
    out.stego_bits = descramble(s_stego, skey);
    out.stego = apply_stego(cover, seq, out.stego_bits);
    out.meta = std::move(seq);
    return out;
}

inline ExtractResult extract_edmas(const CoefImage& stego, const SchemeConfig& cfg,
                                   std::size_t msg_len) {
    const QuantTable lattice = quant_table(cfg.quality);
    BitVec bits = extract_bits(stego, cfg.domain, lattice);
    const std::size_t lc = bits.size();
    const std::size_t k = static_cast<std::size_t>(crc_degree(cfg.crc.poly));
    const std::size_t lr = static_cast<std::size_t>(cfg.crc.group_bits);
    const std::size_t le = edmas_split(lc, lr, k);
    const std::uint64_t skey = derive_seed(cfg.key, keytag::kScramble);
    BitVec sbits = scramble(bits, skey);
    BitVec s1 = subrange(sbits, 0, le);
    BitVec s2 = subrange(sbits, le, lc - le);

    const std::size_t ngroups = (le + lr - 1) / lr;
    BitVec checks = stc_extract(s2, ngroups * k, segment_stc(cfg, keytag::kEdmasCheck));
    ExtractResult out;
    for (std::size_t g = 0; g < ngroups; ++g) {
        std::size_t off = g * lr;
        std::size_t glen = le - off < lr ? le - off : lr;
        BitVec group = subrange(s1, off, glen);
        BitVec chk = subrange(checks, g * k, k);
        if (!crc_check(group, chk, cfg.crc.poly)) {
            if (crc_correct_single(group, chk, cfg.crc.poly)) {
                std::copy(group.begin(), group.end(),
                          s1.begin() + static_cast<std::ptrdiff_t>(off));
            } else {
                ++out.rs_failures;
            }
        }
    }
    out.message = stc_extract(s1, msg_len, segment_stc(cfg, keytag::kEdmasMessage));
    out.ok = out.rs_failures == 0;
    return out;
}

} // namespace rsteg
