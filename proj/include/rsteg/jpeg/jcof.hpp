#pragma once

#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "rsteg/jpeg/image.hpp"
#include "rsteg/util/error.hpp"
#include "rsteg/util/plane.hpp"

// JCOF: a minimal container for quantized coefficient planes, for debugging
// and piping between tools without entropy coding. Layout (little endian):
//   magic "JCOF1" | u32 width | u32 height | u16 quality | int16 plane
// The plane covers the padded block grid row-major. Tables are implied by the
// IJG quality, which is the only kind of table this pipeline produces.
//
// COST1 uses the same header with magic "COST1" and a float64 plane; it dumps
// per-coefficient embedding costs for inspection.

namespace rsteg {

namespace detail {

inline void put_u32le(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(v & 0xFF);
    out.push_back((v >> 8) & 0xFF);
    out.push_back((v >> 16) & 0xFF);
    out.push_back((v >> 24) & 0xFF);
}

inline std::uint32_t get_u32le(const std::vector<std::uint8_t>& d, std::size_t p) {
    return static_cast<std::uint32_t>(d[p]) | (static_cast<std::uint32_t>(d[p + 1]) << 8) |
           (static_cast<std::uint32_t>(d[p + 2]) << 16) |
           (static_cast<std::uint32_t>(d[p + 3]) << 24);
}

} // namespace detail

inline std::vector<std::uint8_t> encode_jcof(const CoefImage& img) {
    if (img.table.quality < 1 || img.table.quality > 100)
        throw Error("jcof: image has no IJG quality table");
    std::vector<std::uint8_t> out;
    for (char c : {'J', 'C', 'O', 'F', '1'}) out.push_back(static_cast<std::uint8_t>(c));
    detail::put_u32le(out, static_cast<std::uint32_t>(img.width));
    detail::put_u32le(out, static_cast<std::uint32_t>(img.height));
    out.push_back(img.table.quality & 0xFF);
    out.push_back((img.table.quality >> 8) & 0xFF);
    for (std::int16_t v : img.coef) {
        out.push_back(static_cast<std::uint8_t>(v & 0xFF));
        out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xFF));
    }
    return out;
}

inline CoefImage decode_jcof(const std::vector<std::uint8_t>& data) {
    if (data.size() < 15 || data[0] != 'J' || data[1] != 'C' || data[2] != 'O' ||
        data[3] != 'F' || data[4] != '1')
        throw FormatError("jcof: bad magic");
    CoefImage img;
    img.width = static_cast<int>(detail::get_u32le(data, 5));
    img.height = static_cast<int>(detail::get_u32le(data, 9));
    int quality = data[13] | (data[14] << 8);
    if (img.width < 1 || img.height < 1 || img.width > 65535 || img.height > 65535)
        throw FormatError("jcof: bad dimensions");
    img.table = quant_table(quality);
    std::size_t n = static_cast<std::size_t>(img.padded_width()) * img.padded_height();
    if (data.size() != 15 + 2 * n) throw FormatError("jcof: size mismatch");
    img.coef.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::uint16_t u = static_cast<std::uint16_t>(data[15 + 2 * i]) |
                          (static_cast<std::uint16_t>(data[16 + 2 * i]) << 8);
        img.coef[i] = static_cast<std::int16_t>(u);
    }
    return img;
}

// Cost-map dump: same header, float64 payload.
inline std::vector<std::uint8_t> encode_cost_dump(const Plane& costs, int width, int height,
                                                  int quality) {
    std::vector<std::uint8_t> out;
    for (char c : {'C', 'O', 'S', 'T', '1'}) out.push_back(static_cast<std::uint8_t>(c));
    detail::put_u32le(out, static_cast<std::uint32_t>(width));
    detail::put_u32le(out, static_cast<std::uint32_t>(height));
    out.push_back(quality & 0xFF);
    out.push_back((quality >> 8) & 0xFF);
    for (double v : costs.data) {
        std::uint64_t bits;
        static_assert(sizeof(bits) == sizeof(v));
        std::memcpy(&bits, &v, sizeof(bits));
        for (int s = 0; s < 64; s += 8) out.push_back((bits >> s) & 0xFF);
    }
    return out;
}

inline std::vector<std::uint8_t> read_binary_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open " + path);
    return std::vector<std::uint8_t>((std::istreambuf_iterator<char>(f)),
                                     std::istreambuf_iterator<char>());
}

inline void write_binary_file(const std::string& path, const std::vector<std::uint8_t>& data) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open " + path + " for writing");
    f.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size()));
    if (!f) throw Error("write failed: " + path);
}

} // namespace rsteg
