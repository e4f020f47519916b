#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "rsteg/jpeg/image.hpp"
#include "rsteg/util/rng.hpp"

// Seeded synthetic grayscale corpus for the benchmark harness. Each image
// mixes the ingredients re-compression instability feeds on: smooth gradients
// (stable mass), Gaussian blobs strong enough to saturate against 0/255
// (clipping breaks the DCT round trip), hard-edged rectangles (high-frequency
// block content), and per-pixel noise (nonzero AC population). Fully
// deterministic given (seed, index).

namespace rsteg {

struct CorpusSpec {
    int width = 256;
    int height = 256;
    int count = 50;
    std::uint64_t seed = 0x5eedc0de;
    double noise = 14.0; // uniform amplitude in gray levels
    int blobs = 6;
    int rects = 3;
};

inline PixelImage synth_image(const CorpusSpec& spec, int index) {
    Rng rng(derive_seed(spec.seed, static_cast<std::uint64_t>(index)));
    const int w = spec.width, h = spec.height;
    std::vector<double> acc(static_cast<std::size_t>(w) * h);

    double base = 40.0 + rng.next_double() * 160.0;
    double gx = (rng.next_double() - 0.5) * 1.6;
    double gy = (rng.next_double() - 0.5) * 1.6;
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c)
            acc[static_cast<std::size_t>(r) * w + c] =
                base + gx * (c - w / 2) + gy * (r - h / 2);

    for (int b = 0; b < spec.blobs; ++b) {
        double cx = rng.next_double() * w;
        double cy = rng.next_double() * h;
        double sigma = 8.0 + rng.next_double() * 32.0;
        double amp = (rng.next_double() - 0.5) * 880.0;
        double inv = 1.0 / (2.0 * sigma * sigma);
        for (int r = 0; r < h; ++r) {
            for (int c = 0; c < w; ++c) {
                double dx = c - cx, dy = r - cy;
                acc[static_cast<std::size_t>(r) * w + c] +=
                    amp * std::exp(-(dx * dx + dy * dy) * inv);
            }
        }
    }

    for (int b = 0; b < spec.rects; ++b) {
        int rw = 10 + static_cast<int>(rng.next_below(50));
        int rh = 10 + static_cast<int>(rng.next_below(50));
        if (rw > w) rw = w;
        if (rh > h) rh = h;
        int x0 = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(w - rw) + 1));
        int y0 = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(h - rh) + 1));
        double delta = (rng.next_double() - 0.5) * 560.0;
        for (int r = y0; r < y0 + rh; ++r)
            for (int c = x0; c < x0 + rw; ++c)
                acc[static_cast<std::size_t>(r) * w + c] += delta;
    }

    PixelImage img;
    img.width = w;
    img.height = h;
    img.pixels.resize(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i) {
        double v = acc[i] + (rng.next_double() - 0.5) * 2.0 * spec.noise;
        long long p = round_half_away(v);
        if (p < 0) p = 0;
        if (p > 255) p = 255;
        img.pixels[i] = static_cast<std::uint8_t>(p);
    }
    return img;
}

inline std::vector<PixelImage> synth_corpus(const CorpusSpec& spec) {
    std::vector<PixelImage> out;
    out.reserve(static_cast<std::size_t>(spec.count));
    for (int i = 0; i < spec.count; ++i) out.push_back(synth_image(spec, i));
    return out;
}

} // namespace rsteg
