#pragma once

#include <array>
#include <cmath>

namespace rsteg {

// Orthonormal 8x8 DCT-II basis matrix: kDctBasis[k][n] = s_k cos((2n+1)k pi/16),
// s_0 = sqrt(1/8), s_k = 1/2 otherwise. Rows are orthonormal.
inline const std::array<std::array<double, 8>, 8>& dct_basis() {
    static const std::array<std::array<double, 8>, 8> basis = [] {
        std::array<std::array<double, 8>, 8> b{};
        const double pi = 3.14159265358979323846264338327950288;
        for (int k = 0; k < 8; ++k) {
            double s = k == 0 ? std::sqrt(1.0 / 8.0) : 0.5;
            for (int n = 0; n < 8; ++n) {
                b[k][n] = s * std::cos((2 * n + 1) * k * pi / 16.0);
            }
        }
        return b;
    }();
    return basis;
}

// Forward 2D DCT of one block of samples, with the -128 level shift.
// in/out are row-major 64-element arrays; out[u*8+v] is frequency (u,v).
inline void forward_dct_block(const double* in, double* out) {
    const auto& c = dct_basis();
    double tmp[64];
    // rows: tmp[r][v] = sum_n c[v][n] * (in[r][n] - 128)
    for (int r = 0; r < 8; ++r) {
        for (int v = 0; v < 8; ++v) {
            double acc = 0.0;
            for (int n = 0; n < 8; ++n) acc += c[v][n] * (in[r * 8 + n] - 128.0);
            tmp[r * 8 + v] = acc;
        }
    }
    // columns: out[u][v] = sum_r c[u][r] * tmp[r][v]
    for (int u = 0; u < 8; ++u) {
        for (int v = 0; v < 8; ++v) {
            double acc = 0.0;
            for (int r = 0; r < 8; ++r) acc += c[u][r] * tmp[r * 8 + v];
            out[u * 8 + v] = acc;
        }
    }
}

// Inverse 2D DCT; adds the +128 level shift back. Output is real valued
// (no rounding, no clamping).
inline void inverse_dct_block(const double* in, double* out) {
    const auto& c = dct_basis();
    double tmp[64];
    // columns: tmp[r][v] = sum_u c[u][r] * in[u][v]
    for (int r = 0; r < 8; ++r) {
        for (int v = 0; v < 8; ++v) {
            double acc = 0.0;
            for (int u = 0; u < 8; ++u) acc += c[u][r] * in[u * 8 + v];
            tmp[r * 8 + v] = acc;
        }
    }
    for (int r = 0; r < 8; ++r) {
        for (int n = 0; n < 8; ++n) {
            double acc = 0.0;
            for (int v = 0; v < 8; ++v) acc += c[v][n] * tmp[r * 8 + v];
            out[r * 8 + n] = acc + 128.0;
        }
    }
}

// Shared rounding rule for the whole pipeline: round half away from zero.
inline int round_half_away(double v) {
    return static_cast<int>(std::llround(v));
}

} // namespace rsteg
