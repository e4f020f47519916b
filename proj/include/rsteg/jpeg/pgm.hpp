#pragma once

#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "rsteg/jpeg/image.hpp"
#include "rsteg/util/error.hpp"

namespace rsteg {

namespace detail {

// Reads the next whitespace-separated token, skipping '#' comment lines.
inline std::string pgm_token(std::istream& in) {
    std::string tok;
    int ch = in.get();
    while (ch != EOF) {
        if (ch == '#') {
            while (ch != EOF && ch != '\n') ch = in.get();
        } else if (std::isspace(ch)) {
            // skip
        } else {
            break;
        }
        ch = in.get();
    }
    while (ch != EOF && !std::isspace(ch)) {
        tok.push_back(static_cast<char>(ch));
        ch = in.get();
    }
    if (tok.empty()) throw FormatError("pgm: unexpected end of header");
    return tok;
}

inline long pgm_number(std::istream& in) {
    std::string tok = pgm_token(in);
    for (char c : tok)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw FormatError("pgm: malformed number '" + tok + "'");
    return std::stol(tok);
}

} // namespace detail

// Binary PGM (P5), 8-bit only.
inline PixelImage read_pgm(std::istream& in) {
    std::string magic = detail::pgm_token(in);
    if (magic != "P5") throw FormatError("pgm: not a binary PGM (P5) file");
    long w = detail::pgm_number(in);
    long h = detail::pgm_number(in);
    long maxval = detail::pgm_number(in);
    if (w < 1 || h < 1 || w > 1 << 16 || h > 1 << 16)
        throw FormatError("pgm: bad dimensions");
    if (maxval != 255) throw FormatError("pgm: only maxval 255 supported");
    // single whitespace byte after maxval already consumed by tokenizer
    PixelImage img;
    img.width = static_cast<int>(w);
    img.height = static_cast<int>(h);
    img.pixels.resize(static_cast<std::size_t>(w) * h);
    in.read(reinterpret_cast<char*>(img.pixels.data()),
            static_cast<std::streamsize>(img.pixels.size()));
    if (in.gcount() != static_cast<std::streamsize>(img.pixels.size()))
        throw FormatError("pgm: truncated pixel data");
    return img;
}

inline PixelImage read_pgm_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("pgm: cannot open " + path);
    return read_pgm(f);
}

inline void write_pgm(std::ostream& out, const PixelImage& img) {
    out << "P5\n" << img.width << " " << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.pixels.data()),
              static_cast<std::streamsize>(img.pixels.size()));
    if (!out) throw Error("pgm: write failed");
}

inline void write_pgm_file(const std::string& path, const PixelImage& img) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("pgm: cannot open " + path + " for writing");
    write_pgm(f, img);
}

} // namespace rsteg
