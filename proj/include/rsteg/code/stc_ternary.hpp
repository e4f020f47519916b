#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include "rsteg/code/stc.hpp"
#include "rsteg/util/bits.hpp"
#include "rsteg/util/error.hpp"
#include "rsteg/util/rng.hpp"

// Ternary syndrome-trellis embedding over interval indices n_i with moves
// {-1, 0, +1}. Two independent binary codes cover the parity plane
// (n mod 2) and the second-bit plane (floor(n/2) mod 2); a +-1 move always
// flips parity and flips the second bit depending on the sign and the parity
// of n_i. Running the two codes jointly as a product trellis keeps the
// decision global: the result minimizes total cost subject to both syndromes
// at once, which per-layer sequential embedding cannot guarantee.

namespace rsteg {

struct TernarySplit {
    std::size_t m1 = 0; // parity-plane share
    std::size_t m2 = 0; // second-bit-plane share
};

inline TernarySplit ternary_split(std::size_t total) {
    return TernarySplit{(total + 1) / 2, total / 2};
}

inline StcParams ternary_layer_params(const StcParams& params, int layer) {
    int h = params.h / 2;
    if (h < 2) h = 2;
    return StcParams{h, derive_seed(params.key, layer == 0 ? 0xA1u : 0xA2u)};
}

struct TernaryResult {
    std::vector<int8_t> delta;     // per-element move in {-1, 0, +1}
    std::vector<long long> values; // resulting interval indices
    double cost = 0.0;
};

inline TernaryResult stc_embed_ternary(const std::vector<long long>& values,
                                       const std::vector<double>& cost_plus,
                                       const std::vector<double>& cost_minus,
                                       const BitVec& msg1, const BitVec& msg2,
                                       const StcParams& params) {
    const std::size_t n = values.size();
    const std::size_t m1 = msg1.size();
    const std::size_t m2 = msg2.size();
    if (cost_plus.size() != n || cost_minus.size() != n)
        throw Error("stc: cost length mismatch");
    if (m1 > n || m2 > n) throw CapacityError("stc: message longer than cover");
    const StcParams p1 = ternary_layer_params(params, 0);
    const StcParams p2 = ternary_layer_params(params, 1);
    const int h1 = p1.h;
    const int h2 = p2.h;
    const std::size_t mask1 = (std::size_t{1} << h1) - 1;
    const std::size_t nstates = std::size_t{1} << (h1 + h2);
    const double inf = std::numeric_limits<double>::infinity();

    std::vector<double> cur(nstates, inf), nxt(nstates, inf);
    cur[0] = 0.0;

    // 0 = keep, 1 = +1, 2 = -1
    std::vector<std::uint8_t> dec(n * nstates, 0);

    std::size_t row1 = 0, row2 = 0;
    for (std::size_t j = 0; j < n; ++j) {
        const std::uint32_t pat1 =
            stc_detail::clip_pattern(stc_detail::column_pattern(p1.key, j, h1), row1, m1);
        const std::uint32_t pat2 =
            stc_detail::clip_pattern(stc_detail::column_pattern(p2.key, j, h2), row2, m2);
        const int p = math_mod(values[j], 2);
        const int b = math_mod(math_floordiv(values[j], 2), 2);
        // stego-plane bits and cost per move
        struct Move {
            int pn, bn;
            double w;
        };
        const Move moves[3] = {
            {p, b, 0.0},
            {p ^ 1, (values[j] % 2 != 0) ? b ^ 1 : b, cost_plus[j]},
            {p ^ 1, (values[j] % 2 == 0) ? b ^ 1 : b, cost_minus[j]},
        };
        std::size_t add[3];
        for (int mv = 0; mv < 3; ++mv) {
            std::size_t a = moves[mv].pn ? pat1 : 0u;
            if (moves[mv].bn) a ^= static_cast<std::size_t>(pat2) << h1;
            add[mv] = a;
        }
        std::fill(nxt.begin(), nxt.end(), inf);
        std::uint8_t* dj = dec.data() + j * nstates;
        for (std::size_t s = 0; s < nstates; ++s) {
            double c = cur[s];
            if (!(c < inf)) continue;
            for (int mv = 0; mv < 3; ++mv) {
                double w = moves[mv].w;
                if (!(w < inf)) continue;
                double cn = c + w;
                std::size_t ns = s ^ add[mv];
                if (cn < nxt[ns]) {
                    nxt[ns] = cn;
                    dj[ns] = static_cast<std::uint8_t>(mv);
                }
            }
        }
        std::swap(cur, nxt);

        std::size_t next1 = (j + 1 < n) ? stc_detail::column_row(j + 1, n, m1) : m1;
        while (row1 < next1) {
            int bit = msg1[row1];
            std::fill(nxt.begin(), nxt.end(), inf);
            for (std::size_t s = 0; s < nstates; ++s) {
                if ((static_cast<int>(s) & 1) != bit) continue;
                std::size_t s1 = (s & mask1) >> 1;
                nxt[s1 | (s & ~mask1)] = std::min(nxt[s1 | (s & ~mask1)], cur[s]);
            }
            std::swap(cur, nxt);
            ++row1;
        }
        std::size_t next2 = (j + 1 < n) ? stc_detail::column_row(j + 1, n, m2) : m2;
        while (row2 < next2) {
            int bit = msg2[row2];
            std::fill(nxt.begin(), nxt.end(), inf);
            for (std::size_t s = 0; s < nstates; ++s) {
                if ((static_cast<int>(s >> h1) & 1) != bit) continue;
                std::size_t s2 = (s >> h1) >> 1;
                nxt[(s & mask1) | (s2 << h1)] =
                    std::min(nxt[(s & mask1) | (s2 << h1)], cur[s]);
            }
            std::swap(cur, nxt);
            ++row2;
        }
    }
    if (!(cur[0] < inf)) throw EmbedError("stc: no feasible stego sequence");

    TernaryResult out;
    out.delta.assign(n, 0);
    out.values = values;
    out.cost = cur[0];
    std::size_t state = 0;
    std::size_t r1 = m1, r2 = m2;
    for (std::size_t j = n; j-- > 0;) {
        std::size_t b1 = stc_detail::column_row(j, n, m1);
        std::size_t b2row = stc_detail::column_row(j, n, m2);
        while (r2 > b2row) {
            --r2;
            std::size_t s2 = ((state >> h1) << 1) | msg2[r2];
            state = (state & mask1) | (s2 << h1);
        }
        while (r1 > b1) {
            --r1;
            std::size_t s1 = ((state & mask1) << 1) | msg1[r1];
            state = s1 | (state & ~mask1);
        }
        const std::uint32_t pat1 =
            stc_detail::clip_pattern(stc_detail::column_pattern(p1.key, j, h1), b1, m1);
        const std::uint32_t pat2 =
            stc_detail::clip_pattern(stc_detail::column_pattern(p2.key, j, h2), b2row, m2);
        int mv = dec[j * nstates + state];
        const int p = math_mod(values[j], 2);
        const int b = math_mod(math_floordiv(values[j], 2), 2);
        int pn = p, bn = b;
        if (mv == 1) {
            out.delta[j] = 1;
            out.values[j] = values[j] + 1;
            pn = p ^ 1;
            bn = (values[j] % 2 != 0) ? b ^ 1 : b;
        } else if (mv == 2) {
            out.delta[j] = -1;
            out.values[j] = values[j] - 1;
            pn = p ^ 1;
            bn = (values[j] % 2 == 0) ? b ^ 1 : b;
        }
        if (pn) state ^= pat1;
        if (bn) state ^= static_cast<std::size_t>(pat2) << h1;
    }
    return out;
}

// Single-message entry point: the message is split between the two layers,
// parity plane first.
inline TernaryResult stc_embed_ternary(const std::vector<long long>& values,
                                       const std::vector<double>& cost_plus,
                                       const std::vector<double>& cost_minus,
                                       const BitVec& message, const StcParams& params) {
    TernarySplit split = ternary_split(message.size());
    BitVec msg1(message.begin(), message.begin() + static_cast<std::ptrdiff_t>(split.m1));
    BitVec msg2(message.begin() + static_cast<std::ptrdiff_t>(split.m1), message.end());
    return stc_embed_ternary(values, cost_plus, cost_minus, msg1, msg2, params);
}

// Receiver side: read both planes from the (possibly attacked) interval
// indices and decode each layer with the binary extractor.
inline BitVec stc_extract_ternary(const std::vector<long long>& values, std::size_t m1_len,
                                  std::size_t m2_len, const StcParams& params) {
    const std::size_t n = values.size();
    BitVec plane1(n), plane2(n);
    for (std::size_t j = 0; j < n; ++j) {
        plane1[j] = static_cast<std::uint8_t>(math_mod(values[j], 2));
        plane2[j] = static_cast<std::uint8_t>(math_mod(math_floordiv(values[j], 2), 2));
    }
    BitVec out = stc_extract(plane1, m1_len, ternary_layer_params(params, 0));
    BitVec part2 = stc_extract(plane2, m2_len, ternary_layer_params(params, 1));
    out.insert(out.end(), part2.begin(), part2.end());
    return out;
}

inline BitVec stc_extract_ternary(const std::vector<long long>& values, std::size_t msg_len,
                                  const StcParams& params) {
    TernarySplit split = ternary_split(msg_len);
    return stc_extract_ternary(values, split.m1, split.m2, params);
}

} // namespace rsteg
