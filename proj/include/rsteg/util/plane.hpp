#pragma once

#include <cstddef>
#include <vector>

namespace rsteg {

// Dense row-major 2D array of doubles.
struct Plane {
    int height = 0;
    int width = 0;
    std::vector<double> data;

    Plane() = default;
    Plane(int h, int w, double fill = 0.0)
        : height(h), width(w), data(static_cast<std::size_t>(h) * w, fill) {}

    double& at(int r, int c) { return data[static_cast<std::size_t>(r) * width + c]; }
    double at(int r, int c) const { return data[static_cast<std::size_t>(r) * width + c]; }
};

// Reflect an index into [0, len): -1 maps to 0, len maps to len-1 (symmetric
// padding with edge repeat). Valid for any offset up to len outside the range.
inline int mirror_index(int i, int len) {
    while (i < 0 || i >= len) {
        if (i < 0) i = -1 - i;
        if (i >= len) i = 2 * len - 1 - i;
    }
    return i;
}

} // namespace rsteg
