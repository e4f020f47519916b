#pragma once

#include <cstdint>
#include <cstdlib>
#include <vector>

#include "rsteg/jpeg/dct.hpp"
#include "rsteg/jpeg/quant.hpp"
#include "rsteg/util/error.hpp"
#include "rsteg/util/plane.hpp"

namespace rsteg {

// 8-bit grayscale image.
struct PixelImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels; // row-major

    std::uint8_t at(int r, int c) const {
        return pixels[static_cast<std::size_t>(r) * width + c];
    }
    std::uint8_t& at(int r, int c) {
        return pixels[static_cast<std::size_t>(r) * width + c];
    }
};

// Quantized DCT coefficients of a grayscale image. width/height are the true
// pixel dimensions; the coefficient plane covers the image padded up to
// multiples of 8 (edge replication), so the block grid is
// ceil(height/8) x ceil(width/8).
struct CoefImage {
    int width = 0;
    int height = 0;
    QuantTable table;
    std::vector<std::int16_t> coef; // row-major over the padded plane

    int padded_width() const { return (width + 7) / 8 * 8; }
    int padded_height() const { return (height + 7) / 8 * 8; }
    int blocks_x() const { return padded_width() / 8; }
    int blocks_y() const { return padded_height() / 8; }

    std::int16_t at(int r, int c) const {
        return coef[static_cast<std::size_t>(r) * padded_width() + c];
    }
    std::int16_t& at(int r, int c) {
        return coef[static_cast<std::size_t>(r) * padded_width() + c];
    }
};

// Pad to multiples of 8 by replicating the right/bottom edges. Result is a
// real-valued plane ready for the block DCT.
inline Plane pad_to_blocks(const PixelImage& img) {
    if (img.width < 1 || img.height < 1) throw Error("pad_to_blocks: empty image");
    int ph = (img.height + 7) / 8 * 8;
    int pw = (img.width + 7) / 8 * 8;
    Plane p(ph, pw);
    for (int r = 0; r < ph; ++r) {
        int sr = r < img.height ? r : img.height - 1;
        for (int c = 0; c < pw; ++c) {
            int sc = c < img.width ? c : img.width - 1;
            p.at(r, c) = img.at(sr, sc);
        }
    }
    return p;
}

// Unquantized block DCT of the padded image. Used as side information by
// cost models that want the pre-rounding coefficient values.
inline Plane dct_plane(const PixelImage& img) {
    Plane padded = pad_to_blocks(img);
    Plane out(padded.height, padded.width);
    double in[64], f[64];
    for (int br = 0; br < padded.height / 8; ++br) {
        for (int bc = 0; bc < padded.width / 8; ++bc) {
            for (int i = 0; i < 8; ++i)
                for (int j = 0; j < 8; ++j) in[i * 8 + j] = padded.at(br * 8 + i, bc * 8 + j);
            forward_dct_block(in, f);
            for (int i = 0; i < 8; ++i)
                for (int j = 0; j < 8; ++j) out.at(br * 8 + i, bc * 8 + j) = f[i * 8 + j];
        }
    }
    return out;
}

// JPEG-style compression to quantized coefficients.
inline CoefImage compress(const PixelImage& img, const QuantTable& table) {
    Plane dct = dct_plane(img);
    CoefImage out;
    out.width = img.width;
    out.height = img.height;
    out.table = table;
    out.coef.assign(static_cast<std::size_t>(dct.height) * dct.width, 0);
    for (int r = 0; r < dct.height; ++r) {
        for (int c = 0; c < dct.width; ++c) {
            double q = table.step(r % 8, c % 8);
            out.at(r, c) = static_cast<std::int16_t>(round_half_away(dct.at(r, c) / q));
        }
    }
    return out;
}

inline CoefImage compress(const PixelImage& img, int quality) {
    return compress(img, quant_table(quality));
}

// De-quantized inverse DCT without rounding or clamping; the cost model works
// on this plane. Covers the padded grid.
inline Plane decompress_real(const CoefImage& img) {
    Plane out(img.padded_height(), img.padded_width());
    double f[64], px[64];
    for (int br = 0; br < img.blocks_y(); ++br) {
        for (int bc = 0; bc < img.blocks_x(); ++bc) {
            for (int i = 0; i < 8; ++i)
                for (int j = 0; j < 8; ++j)
                    f[i * 8 + j] = static_cast<double>(img.at(br * 8 + i, bc * 8 + j)) *
                                   img.table.step(i, j);
            inverse_dct_block(f, px);
            for (int i = 0; i < 8; ++i)
                for (int j = 0; j < 8; ++j) out.at(br * 8 + i, bc * 8 + j) = px[i * 8 + j];
        }
    }
    return out;
}

// Decompression to 8-bit pixels: de-quantize, inverse DCT, round half away
// from zero, clamp to [0,255], crop the padding.
inline PixelImage decompress(const CoefImage& img) {
    Plane real = decompress_real(img);
    PixelImage out;
    out.width = img.width;
    out.height = img.height;
    out.pixels.assign(static_cast<std::size_t>(img.width) * img.height, 0);
    for (int r = 0; r < img.height; ++r) {
        for (int c = 0; c < img.width; ++c) {
            int v = round_half_away(real.at(r, c));
            if (v < 0) v = 0;
            if (v > 255) v = 255;
            out.at(r, c) = static_cast<std::uint8_t>(v);
        }
    }
    return out;
}

// Number of nonzero AC coefficients; the denominator of the relative payload
// (bits per nonzero AC coefficient).
inline std::size_t nonzero_ac_count(const CoefImage& img) {
    std::size_t n = 0;
    for (int r = 0; r < img.padded_height(); ++r) {
        for (int c = 0; c < img.padded_width(); ++c) {
            if ((r % 8 == 0) && (c % 8 == 0)) continue; // DC
            if (img.at(r, c) != 0) ++n;
        }
    }
    return n;
}

// Count coefficient positions where two images differ (same geometry required).
inline std::size_t coef_diff_count(const CoefImage& a, const CoefImage& b) {
    if (a.width != b.width || a.height != b.height) throw Error("coef_diff_count: size mismatch");
    std::size_t n = 0;
    for (std::size_t i = 0; i < a.coef.size(); ++i)
        if (a.coef[i] != b.coef[i]) ++n;
    return n;
}

} // namespace rsteg
