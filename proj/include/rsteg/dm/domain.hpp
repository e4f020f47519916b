#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rsteg/jpeg/image.hpp"
#include "rsteg/util/error.hpp"

namespace rsteg {

// An embedding domain is a set of counter-diagonals of the 8x8 block grid.
// Diagonal k (1-based, k in [1,8]) holds the k positions with i+j == k+1 in
// 1-based frequency coordinates; k = 1 is the DC position alone. The textual
// form is "E_45": one digit per selected diagonal.
struct DomainSpec {
    std::vector<int> diagonals; // ascending, unique, each in [1,8]

    bool operator==(const DomainSpec& o) const { return diagonals == o.diagonals; }
};

inline DomainSpec parse_domain(const std::string& text) {
    if (text.size() < 3 || text[0] != 'E' || text[1] != '_')
        throw FormatError("domain: expected E_<digits> form, got '" + text + "'");
    DomainSpec d;
    for (std::size_t i = 2; i < text.size(); ++i) {
        char c = text[i];
        if (c < '1' || c > '8') throw FormatError("domain: diagonal digit out of [1,8]");
        int k = c - '0';
        for (int prev : d.diagonals)
            if (prev == k) throw FormatError("domain: duplicate diagonal");
        if (!d.diagonals.empty() && d.diagonals.back() > k)
            throw FormatError("domain: diagonals must be ascending");
        d.diagonals.push_back(k);
    }
    return d;
}

inline std::string format_domain(const DomainSpec& d) {
    std::string s = "E_";
    for (int k : d.diagonals) s.push_back(static_cast<char>('0' + k));
    return s;
}

// In-block positions of one diagonal, 0-indexed (i, j), ascending i.
inline std::vector<std::pair<int, int>> diagonal_positions(int k) {
    if (k < 1 || k > 8) throw Error("domain: diagonal out of [1,8]");
    std::vector<std::pair<int, int>> out;
    for (int i = 1; i <= k; ++i) out.emplace_back(i - 1, k + 1 - i - 1);
    return out;
}

// Number of cover elements per block.
inline std::size_t domain_block_size(const DomainSpec& d) {
    std::size_t n = 0;
    for (int k : d.diagonals) n += static_cast<std::size_t>(k);
    return n;
}

// Flat plane indices of every cover element in scan order: blocks row-major,
// then ascending diagonal, then ascending row inside the diagonal. The domain
// is purely positional, so sender and receiver derive identical sequences
// from the image geometry alone; zero coefficients participate.
inline std::vector<std::uint32_t> domain_positions(const DomainSpec& d, const CoefImage& img) {
    if (d.diagonals.empty()) throw Error("domain: empty diagonal set");
    std::vector<std::uint32_t> out;
    out.reserve(domain_block_size(d) * static_cast<std::size_t>(img.blocks_x()) *
                img.blocks_y());
    int pw = img.padded_width();
    for (int br = 0; br < img.blocks_y(); ++br) {
        for (int bc = 0; bc < img.blocks_x(); ++bc) {
            for (int k : d.diagonals) {
                for (auto [i, j] : diagonal_positions(k)) {
                    out.push_back(static_cast<std::uint32_t>((br * 8 + i) * pw + bc * 8 + j));
                }
            }
        }
    }
    return out;
}

} // namespace rsteg
