#pragma once

#include "rsteg/scheme/edmas.hpp"
#include "rsteg/scheme/gmas.hpp"
#include "rsteg/scheme/proposed.hpp"

namespace rsteg {

inline EmbedResult embed(const CoefImage& cover, const BitVec& message,
                         const SchemeConfig& cfg, const PixelImage* precover = nullptr,
                         const Plane* rho_hint = nullptr) {
    switch (cfg.scheme) {
        case Scheme::proposed: return embed_proposed(cover, message, cfg, rho_hint);
        case Scheme::gmas: return embed_gmas(cover, message, cfg, precover, rho_hint);
        default: return embed_edmas(cover, message, cfg, rho_hint);
    }
}

inline ExtractResult extract(const CoefImage& stego, const SchemeConfig& cfg,
                             std::size_t msg_len) {
    switch (cfg.scheme) {
        case Scheme::proposed: return extract_proposed(stego, cfg, msg_len);
        case Scheme::gmas: return extract_gmas(stego, cfg, msg_len);
        default: return extract_edmas(stego, cfg, msg_len);
    }
}

} // namespace rsteg
