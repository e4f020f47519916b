#pragma once

#include <array>
#include <cmath>
#include <map>
#include <tuple>
#include <vector>

#include "rsteg/cost/wavelet.hpp"
#include "rsteg/jpeg/dct.hpp"
#include "rsteg/jpeg/image.hpp"
#include "rsteg/util/plane.hpp"

namespace rsteg {

// Stabilizer of the wavelet-relative distortion ratios.
inline constexpr double kJuniwardSigma = 0.015625; // 2^-6

namespace detail {

// Absolute values of the 1D residual change caused by one DCT basis vector
// placed at block origin r0 on an axis of length len. `start` is relative to
// r0. Mirror padding folds the change back near the axis ends, so the stencil
// shape depends on whether the block touches the first or last position.
struct AxisStencil {
    int start = 0;
    std::vector<double> absval;
};

inline AxisStencil make_axis_stencil(int len, int r0, int basis, const std::array<double, 8>& f) {
    auto delta = [&](int t) -> double {
        t = mirror_index(t, len);
        if (t < r0 || t >= r0 + 8) return 0.0;
        return dct_basis()[basis][t - r0];
    };
    int lo = r0 - 12, hi = r0 + 20; // generous; provably-zero rows trim below
    if (lo < 0) lo = 0;
    if (hi > len) hi = len;
    std::vector<double> vals;
    vals.reserve(hi - lo);
    for (int u = lo; u < hi; ++u) {
        double acc = 0.0;
        for (int a = 0; a < 8; ++a) acc += f[a] * delta(u + a - kWaveletAnchor);
        vals.push_back(acc);
    }
    int b = 0, e = static_cast<int>(vals.size());
    while (b < e && vals[b] == 0.0) ++b;
    while (e > b && vals[e - 1] == 0.0) --e;
    AxisStencil s;
    s.start = lo + b - r0;
    s.absval.assign(vals.begin() + b, vals.begin() + e);
    for (double& v : s.absval) v = std::fabs(v);
    return s;
}

// Stencils are identical for all blocks that touch neither axis end, so cache
// them by (basis, filter, touches-first, touches-last).
class StencilCache {
public:
    explicit StencilCache(int len) : len_(len) {}

    const AxisStencil& get(int r0, int basis, int filter_id) {
        int cls = (r0 == 0 ? 2 : 0) | (r0 == len_ - 8 ? 1 : 0);
        auto key = std::make_tuple(basis, filter_id, cls);
        auto it = cache_.find(key);
        if (it == cache_.end()) {
            const auto& f = filter_id == 0 ? kWaveletLo : kWaveletHi;
            it = cache_.emplace(key, make_axis_stencil(len_, r0, basis, f)).first;
        }
        return it->second;
    }

private:
    int len_;
    std::map<std::tuple<int, int, int>, AxisStencil> cache_;
};

inline int filter_id(const std::array<double, 8>& f) { return &f == &kWaveletLo ? 0 : 1; }

} // namespace detail

// Per-coefficient distortion of a unit quantized change: the wavelet-relative
// sum |W(cover) - W(changed)| / (|W(cover)| + sigma) over all three detail
// subbands. +1 and -1 changes cost the same by construction. Output plane
// covers the padded coefficient grid.
inline Plane juniward_costs(const CoefImage& cover) {
    Plane spatial = decompress_real(cover);
    WaveletResidualStack w = wavelet_residuals(spatial);

    std::array<Plane, 3> inv_denom;
    for (int k = 0; k < 3; ++k) {
        inv_denom[k] = Plane(spatial.height, spatial.width);
        for (std::size_t i = 0; i < w.planes[k].data.size(); ++i) {
            inv_denom[k].data[i] = 1.0 / (std::fabs(w.planes[k].data[i]) + kJuniwardSigma);
        }
    }

    detail::StencilCache rows(spatial.height);
    detail::StencilCache cols(spatial.width);

    Plane rho(spatial.height, spatial.width);
    const detail::AxisStencil* sv[3][8];
    const detail::AxisStencil* sh[3][8];
    for (int r0 = 0; r0 < spatial.height; r0 += 8) {
        for (int c0 = 0; c0 < spatial.width; c0 += 8) {
            for (int k = 0; k < 3; ++k) {
                for (int b = 0; b < 8; ++b) {
                    sv[k][b] = &rows.get(r0, b, detail::filter_id(wavelet_vfilter(k)));
                    sh[k][b] = &cols.get(c0, b, detail::filter_id(wavelet_hfilter(k)));
                }
            }
            for (int i = 0; i < 8; ++i) {
                for (int j = 0; j < 8; ++j) {
                    double acc = 0.0;
                    for (int k = 0; k < 3; ++k) {
                        const detail::AxisStencil& row_st = *sv[k][i];
                        const detail::AxisStencil& col_st = *sh[k][j];
                        const Plane& d = inv_denom[k];
                        for (std::size_t ur = 0; ur < row_st.absval.size(); ++ur) {
                            int u = r0 + row_st.start + static_cast<int>(ur);
                            const double* drow =
                                &d.data[static_cast<std::size_t>(u) * d.width + c0 +
                                        col_st.start];
                            double sum = 0.0;
                            for (std::size_t vc = 0; vc < col_st.absval.size(); ++vc) {
                                sum += col_st.absval[vc] * drow[vc];
                            }
                            acc += row_st.absval[ur] * sum;
                        }
                    }
                    rho.at(r0 + i, c0 + j) = cover.table.step(i, j) * acc;
                }
            }
        }
    }
    return rho;
}

} // namespace rsteg
