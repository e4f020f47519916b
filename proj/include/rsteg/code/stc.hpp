#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include "rsteg/util/bits.hpp"
#include "rsteg/util/error.hpp"
#include "rsteg/util/rng.hpp"

// Binary syndrome-trellis code. The parity-check matrix is built from
// key-derived submatrix columns of height h laid out along a staggered
// diagonal: column j contributes to message rows [row(j), row(j)+h) where
// row(j) = floor(j*m/n). The Viterbi pass below finds the cheapest stego
// sequence y with H*y = message; it is exactly optimal for the given H
// (verified against exhaustive coset search in the tests).

namespace rsteg {

struct StcParams {
    int h = 10;            // constraint height of the submatrix columns
    std::uint64_t key = 0; // seeds the column patterns
};

namespace stc_detail {

// Column pattern, bit t = submatrix row t. First and last rows are forced to
// 1: the first keeps every column able to flip its own message row, the last
// maximizes the trellis memory span.
inline std::uint32_t column_pattern(std::uint64_t key, std::size_t j, int h) {
    std::uint32_t p = static_cast<std::uint32_t>(derive_seed(key, j));
    if (h < 32) p &= (1u << h) - 1u;
    p |= 1u;
    p |= 1u << (h - 1);
    return p;
}

inline std::size_t column_row(std::size_t j, std::size_t n, std::size_t m) {
    return n ? (j * m) / n : 0;
}

// Drop pattern bits that would fall past the last message row.
inline std::uint32_t clip_pattern(std::uint32_t pat, std::size_t row, std::size_t m) {
    std::size_t remaining = m > row ? m - row : 0;
    if (remaining >= 32) return pat;
    return remaining ? pat & ((1u << remaining) - 1u) : 0u;
}

} // namespace stc_detail

struct StcResult {
    BitVec stego;
    double cost = 0.0;
};

inline StcResult stc_embed(const BitVec& cover, const std::vector<double>& cost,
                           const BitVec& message, const StcParams& params) {
    const std::size_t n = cover.size();
    const std::size_t m = message.size();
    if (cost.size() != n) throw Error("stc: cost length mismatch");
    if (m > n) throw CapacityError("stc: message longer than cover");
    if (params.h < 2 || params.h > 16) throw Error("stc: constraint height out of range");
    const int h = params.h;
    const std::size_t nstates = std::size_t{1} << h;
    const double inf = std::numeric_limits<double>::infinity();

    std::vector<double> cur(nstates, inf), nxt(nstates, inf);
    cur[0] = 0.0;

    const std::size_t words = nstates / 64 ? nstates / 64 : 1;
    std::vector<std::uint64_t> dec(n * words, 0);
    auto set_dec = [&](std::size_t j, std::size_t s, int y) {
        std::uint64_t& w = dec[j * words + (s >> 6)];
        std::uint64_t bit = 1ull << (s & 63);
        if (y)
            w |= bit;
        else
            w &= ~bit;
    };

    std::size_t row = 0;
    for (std::size_t j = 0; j < n; ++j) {
        std::uint32_t pat =
            stc_detail::clip_pattern(stc_detail::column_pattern(params.key, j, h), row, m);
        const std::size_t add_keep = cover[j] ? pat : 0u;
        const std::size_t add_flip = cover[j] ? 0u : pat;
        const double wj = cost[j];
        std::fill(nxt.begin(), nxt.end(), inf);
        for (std::size_t s = 0; s < nstates; ++s) {
            double c = cur[s];
            if (!(c < inf)) continue;
            std::size_t ns = s ^ add_keep;
            if (c < nxt[ns]) {
                nxt[ns] = c;
                set_dec(j, ns, cover[j]);
            }
            if (wj < inf) {
                double cf = c + wj;
                std::size_t nf = s ^ add_flip;
                if (cf < nxt[nf]) {
                    nxt[nf] = cf;
                    set_dec(j, nf, cover[j] ^ 1);
                }
            }
        }
        std::swap(cur, nxt);

        std::size_t next_row = (j + 1 < n) ? stc_detail::column_row(j + 1, n, m) : m;
        while (row < next_row) {
            int bit = message[row];
            std::fill(nxt.begin(), nxt.end(), inf);
            for (std::size_t s = 0; s < nstates; ++s) {
                if ((static_cast<int>(s) & 1) == bit) nxt[s >> 1] = cur[s];
            }
            std::swap(cur, nxt);
            ++row;
        }
    }
    if (!(cur[0] < inf)) throw EmbedError("stc: no feasible stego sequence");

    StcResult out;
    out.stego.resize(n);
    out.cost = cur[0];
    std::size_t state = 0;
    std::size_t rrow = m;
    for (std::size_t j = n; j-- > 0;) {
        std::size_t bj = stc_detail::column_row(j, n, m);
        while (rrow > bj) {
            --rrow;
            state = (state << 1) | message[rrow];
        }
        std::uint32_t pat =
            stc_detail::clip_pattern(stc_detail::column_pattern(params.key, j, h), bj, m);
        int y = static_cast<int>(dec[j * words + (state >> 6)] >> (state & 63)) & 1;
        out.stego[j] = static_cast<std::uint8_t>(y);
        if (y) state ^= pat;
    }
    return out;
}

inline BitVec stc_extract(const BitVec& stego, std::size_t msg_len, const StcParams& params) {
    const std::size_t n = stego.size();
    if (msg_len > n) throw Error("stc: message length exceeds sequence length");
    if (params.h < 2 || params.h > 16) throw Error("stc: constraint height out of range");
    BitVec msg(msg_len, 0);
    for (std::size_t j = 0; j < n; ++j) {
        if (!stego[j]) continue;
        std::uint32_t pat = stc_detail::column_pattern(params.key, j, params.h);
        std::size_t bj = stc_detail::column_row(j, n, msg_len);
        for (int t = 0; t < params.h && bj + t < msg_len; ++t) {
            if (pat >> t & 1u) msg[bj + t] ^= 1u;
        }
    }
    return msg;
}

} // namespace rsteg
