#pragma once

#include <array>

#include "rsteg/util/plane.hpp"

namespace rsteg {

// 8-tap Daubechies decomposition pair.
inline constexpr std::array<double, 8> kWaveletLo = {
    -0.010597401784997278, 0.032883011666982945, 0.030841381835986965,
    -0.18703481171888114,  -0.02798376941698385, 0.6308807679295904,
    0.7148465705525415,    0.23037781330885523};

// Quadrature mirror of the lowpass: hi[k] = (-1)^k lo[7-k].
inline constexpr std::array<double, 8> kWaveletHi = {
    0.23037781330885523,  -0.7148465705525415,  0.6308807679295904,
    0.02798376941698385,  -0.18703481171888114, -0.030841381835986965,
    0.032883011666982945, 0.010597401784997278};

// Filter anchor: tap a of a filter applied at position u reads position
// u + a - kWaveletAnchor (symmetric mirror padding at the borders).
inline constexpr int kWaveletAnchor = 4;

// Per-direction (vertical filter, horizontal filter) pairs for the three
// detail subbands: LH, HL, HH.
inline const std::array<double, 8>& wavelet_vfilter(int k) {
    return k == 1 ? kWaveletLo : kWaveletHi;
}
inline const std::array<double, 8>& wavelet_hfilter(int k) {
    return k == 0 ? kWaveletLo : kWaveletHi;
}

struct WaveletResidualStack {
    std::array<Plane, 3> planes;
};

namespace detail {

// 1D correlation along rows (horizontal) with mirror padding, same size.
inline Plane filter_rows(const Plane& p, const std::array<double, 8>& f) {
    Plane out(p.height, p.width);
    for (int r = 0; r < p.height; ++r) {
        for (int c = 0; c < p.width; ++c) {
            double acc = 0.0;
            for (int a = 0; a < 8; ++a) {
                acc += f[a] * p.at(r, mirror_index(c + a - kWaveletAnchor, p.width));
            }
            out.at(r, c) = acc;
        }
    }
    return out;
}

// 1D correlation along columns (vertical).
inline Plane filter_cols(const Plane& p, const std::array<double, 8>& f) {
    Plane out(p.height, p.width);
    for (int r = 0; r < p.height; ++r) {
        for (int c = 0; c < p.width; ++c) {
            double acc = 0.0;
            for (int a = 0; a < 8; ++a) {
                acc += f[a] * p.at(mirror_index(r + a - kWaveletAnchor, p.height), c);
            }
            out.at(r, c) = acc;
        }
    }
    return out;
}

} // namespace detail

// Directional first-level residuals of a spatial plane; each output plane has
// the input's dimensions.
inline WaveletResidualStack wavelet_residuals(const Plane& spatial) {
    WaveletResidualStack out;
    Plane row_lo = detail::filter_rows(spatial, kWaveletLo);
    Plane row_hi = detail::filter_rows(spatial, kWaveletHi);
    out.planes[0] = detail::filter_cols(row_lo, kWaveletHi); // LH
    out.planes[1] = detail::filter_cols(row_hi, kWaveletLo); // HL
    out.planes[2] = detail::filter_cols(row_hi, kWaveletHi); // HH
    return out;
}

} // namespace rsteg
