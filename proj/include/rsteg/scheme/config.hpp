#pragma once

#include <cstdint>
#include <string>

#include "rsteg/code/stc.hpp"
#include "rsteg/dm/domain.hpp"
#include "rsteg/util/error.hpp"

namespace rsteg {

enum class Scheme { proposed, gmas, edmas };

inline Scheme parse_scheme(const std::string& name) {
    if (name == "proposed") return Scheme::proposed;
    if (name == "gmas") return Scheme::gmas;
    if (name == "edmas") return Scheme::edmas;
    throw Error("unknown scheme: " + name);
}

inline const char* format_scheme(Scheme s) {
    switch (s) {
        case Scheme::proposed: return "proposed";
        case Scheme::gmas: return "gmas";
        default: return "edmas";
    }
}

struct CrcParams {
    std::uint32_t poly = 0x107; // x^8 + x^2 + x + 1
    int group_bits = 16;        // l_r
};

struct SchemeConfig {
    Scheme scheme = Scheme::proposed;
    DomainSpec domain = parse_domain("E_45");
    int quality = 65;     // channel quality; covers are compressed at this too
    double payload = 0.05; // secret-message bits per nonzero AC coefficient
    std::uint64_t key = 0;
    StcParams stc{10, 0}; // per-segment keys are derived from `key`
    double alpha = 0.7;   // gmas cost asymmetry
    CrcParams crc;        // edmas group checks
    int rs_t = 2;             // layered-check code strength (proposed)
    int gmas_rs_t = 16;       // gmas message code, RS(255,223)-style
    bool double_layer = true; // false: no third-segment checks (ablation)
    int modification_passes = 2;
};

inline const char* default_domain_name(Scheme s) {
    switch (s) {
        case Scheme::proposed: return "E_45";
        case Scheme::gmas: return "E_678";
        default: return "E_78";
    }
}

inline SchemeConfig default_config(Scheme s) {
    SchemeConfig cfg;
    cfg.scheme = s;
    cfg.domain = parse_domain(default_domain_name(s));
    return cfg;
}

// Key-material derivation tags; sender and receiver must agree on these.
namespace keytag {
inline constexpr std::uint64_t kScramble = 1;
inline constexpr std::uint64_t kSegment1 = 2;
inline constexpr std::uint64_t kSegment2 = 3;
inline constexpr std::uint64_t kSegment3 = 4;
inline constexpr std::uint64_t kGmas = 5;
inline constexpr std::uint64_t kEdmasMessage = 6;
inline constexpr std::uint64_t kEdmasCheck = 7;
} // namespace keytag

inline StcParams segment_stc(const SchemeConfig& cfg, std::uint64_t tag) {
    return StcParams{cfg.stc.h, derive_seed(cfg.key, tag)};
}

} // namespace rsteg
