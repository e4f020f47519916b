#pragma once

#include <array>
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "rsteg/jpeg/image.hpp"
#include "rsteg/jpeg/quant.hpp"
#include "rsteg/util/error.hpp"

// Baseline sequential JFIF, grayscale only, standard Huffman tables, no
// subsampling, no restart markers. The coefficient plane round-trips exactly:
// decode_jfif(encode_jfif(x)) == x.

namespace rsteg {

namespace jfif {

inline constexpr std::array<int, 64> kZigzag = {
    0,  1,  8,  16, 9,  2,  3,  10,
    17, 24, 32, 25, 18, 11, 4,  5,
    12, 19, 26, 33, 40, 48, 41, 34,
    27, 20, 13, 6,  7,  14, 21, 28,
    35, 42, 49, 56, 57, 50, 43, 36,
    29, 22, 15, 23, 30, 37, 44, 51,
    58, 59, 52, 45, 38, 31, 39, 46,
    53, 60, 61, 54, 47, 55, 62, 63,
};

// Standard luminance Huffman tables (counts per code length 1..16, then values).
inline constexpr std::array<std::uint8_t, 16> kDcBits = {
    0, 1, 5, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0};
inline constexpr std::array<std::uint8_t, 12> kDcVals = {0, 1, 2,  3, 4, 5,
                                                         6, 7, 8,  9, 10, 11};
inline constexpr std::array<std::uint8_t, 16> kAcBits = {
    0, 2, 1, 3, 3, 2, 4, 3, 5, 5, 4, 4, 0, 0, 1, 0x7d};
inline constexpr std::array<std::uint8_t, 162> kAcVals = {
    0x01, 0x02, 0x03, 0x00, 0x04, 0x11, 0x05, 0x12, 0x21, 0x31, 0x41, 0x06,
    0x13, 0x51, 0x61, 0x07, 0x22, 0x71, 0x14, 0x32, 0x81, 0x91, 0xa1, 0x08,
    0x23, 0x42, 0xb1, 0xc1, 0x15, 0x52, 0xd1, 0xf0, 0x24, 0x33, 0x62, 0x72,
    0x82, 0x09, 0x0a, 0x16, 0x17, 0x18, 0x19, 0x1a, 0x25, 0x26, 0x27, 0x28,
    0x29, 0x2a, 0x34, 0x35, 0x36, 0x37, 0x38, 0x39, 0x3a, 0x43, 0x44, 0x45,
    0x46, 0x47, 0x48, 0x49, 0x4a, 0x53, 0x54, 0x55, 0x56, 0x57, 0x58, 0x59,
    0x5a, 0x63, 0x64, 0x65, 0x66, 0x67, 0x68, 0x69, 0x6a, 0x73, 0x74, 0x75,
    0x76, 0x77, 0x78, 0x79, 0x7a, 0x83, 0x84, 0x85, 0x86, 0x87, 0x88, 0x89,
    0x8a, 0x92, 0x93, 0x94, 0x95, 0x96, 0x97, 0x98, 0x99, 0x9a, 0xa2, 0xa3,
    0xa4, 0xa5, 0xa6, 0xa7, 0xa8, 0xa9, 0xaa, 0xb2, 0xb3, 0xb4, 0xb5, 0xb6,
    0xb7, 0xb8, 0xb9, 0xba, 0xc2, 0xc3, 0xc4, 0xc5, 0xc6, 0xc7, 0xc8, 0xc9,
    0xca, 0xd2, 0xd3, 0xd4, 0xd5, 0xd6, 0xd7, 0xd8, 0xd9, 0xda, 0xe1, 0xe2,
    0xe3, 0xe4, 0xe5, 0xe6, 0xe7, 0xe8, 0xe9, 0xea, 0xf1, 0xf2, 0xf3, 0xf4,
    0xf5, 0xf6, 0xf7, 0xf8, 0xf9, 0xfa};

struct HuffTable {
    std::array<std::uint8_t, 16> bits{};
    std::vector<std::uint8_t> vals;
    // encoder view: symbol -> (code, length)
    std::array<std::uint16_t, 256> code{};
    std::array<std::uint8_t, 256> size{};
    // decoder view, per code length 1..16
    std::array<int, 17> mincode{};
    std::array<int, 17> maxcode{}; // -1 when no codes of that length
    std::array<int, 17> valptr{};
};

// Canonical code assignment per the baseline standard.
inline HuffTable build_huff(const std::uint8_t* bits, const std::uint8_t* vals,
                            std::size_t nvals) {
    HuffTable t;
    for (int i = 0; i < 16; ++i) t.bits[i] = bits[i];
    t.vals.assign(vals, vals + nvals);
    t.size.fill(0);
    int code = 0;
    std::size_t k = 0;
    for (int len = 1; len <= 16; ++len) {
        t.valptr[len] = static_cast<int>(k);
        t.mincode[len] = code;
        for (int i = 0; i < bits[len - 1]; ++i) {
            if (k >= nvals) throw FormatError("jfif: huffman table counts exceed values");
            t.code[t.vals[k]] = static_cast<std::uint16_t>(code);
            t.size[t.vals[k]] = static_cast<std::uint8_t>(len);
            ++code;
            ++k;
        }
        t.maxcode[len] = bits[len - 1] ? code - 1 : -1;
        code <<= 1;
    }
    if (k != nvals) throw FormatError("jfif: huffman table values exceed counts");
    return t;
}

inline const HuffTable& std_dc_table() {
    static const HuffTable t = build_huff(kDcBits.data(), kDcVals.data(), kDcVals.size());
    return t;
}
inline const HuffTable& std_ac_table() {
    static const HuffTable t = build_huff(kAcBits.data(), kAcVals.data(), kAcVals.size());
    return t;
}

// Magnitude category: smallest s with |v| < 2^s.
inline int bit_category(int v) {
    int a = v < 0 ? -v : v;
    int s = 0;
    while (a) {
        a >>= 1;
        ++s;
    }
    return s;
}

class BitWriter {
public:
    explicit BitWriter(std::vector<std::uint8_t>& out) : out_(out) {}

    void put(int value, int nbits) {
        for (int i = nbits - 1; i >= 0; --i) put_bit((value >> i) & 1);
    }

    void flush() {
        while (fill_ != 0) put_bit(1); // pad with 1s to a byte boundary
    }

private:
    void put_bit(int b) {
        acc_ = static_cast<std::uint8_t>((acc_ << 1) | b);
        if (++fill_ == 8) {
            out_.push_back(acc_);
            if (acc_ == 0xFF) out_.push_back(0x00); // byte stuffing
            acc_ = 0;
            fill_ = 0;
        }
    }

    std::vector<std::uint8_t>& out_;
    std::uint8_t acc_ = 0;
    int fill_ = 0;
};

class BitReader {
public:
    BitReader(const std::vector<std::uint8_t>& data, std::size_t pos)
        : data_(data), pos_(pos) {}

    int get_bit() {
        if (fill_ == 0) {
            if (at_marker_) throw FormatError("jfif: entropy data ended early");
            if (pos_ >= data_.size()) throw FormatError("jfif: truncated entropy data");
            std::uint8_t b = data_[pos_++];
            if (b == 0xFF) {
                if (pos_ >= data_.size()) throw FormatError("jfif: truncated after 0xFF");
                std::uint8_t m = data_[pos_++];
                if (m != 0x00) {
                    // a real marker; no more entropy data
                    at_marker_ = true;
                    marker_pos_ = pos_ - 2;
                    throw FormatError("jfif: entropy data ended early");
                }
            }
            acc_ = b;
            fill_ = 8;
        }
        --fill_;
        return (acc_ >> fill_) & 1;
    }

    int get_bits(int n) {
        int v = 0;
        for (int i = 0; i < n; ++i) v = (v << 1) | get_bit();
        return v;
    }

    // Byte position of the marker following the entropy data.
    std::size_t finish() {
        fill_ = 0;
        if (at_marker_) return marker_pos_;
        std::size_t p = pos_;
        while (p < data_.size()) {
            if (data_[p] == 0xFF && p + 1 < data_.size() && data_[p + 1] != 0x00) return p;
            ++p;
        }
        throw FormatError("jfif: missing end-of-image marker");
    }

private:
    const std::vector<std::uint8_t>& data_;
    std::size_t pos_;
    std::uint8_t acc_ = 0;
    int fill_ = 0;
    bool at_marker_ = false;
    std::size_t marker_pos_ = 0;
};

inline int decode_huff_symbol(BitReader& br, const HuffTable& t) {
    int code = br.get_bit();
    for (int len = 1; len <= 16; ++len) {
        if (t.maxcode[len] >= 0 && code <= t.maxcode[len]) {
            return t.vals[t.valptr[len] + code - t.mincode[len]];
        }
        code = (code << 1) | br.get_bit();
    }
    throw FormatError("jfif: invalid huffman code");
}

// T.81 EXTEND: map `size` raw bits to a signed value.
inline int extend_value(int raw, int size) {
    if (size == 0) return 0;
    return raw < (1 << (size - 1)) ? raw - (1 << size) + 1 : raw;
}

} // namespace jfif

inline std::vector<std::uint8_t> encode_jfif(const CoefImage& img) {
    if (img.width < 1 || img.height < 1 || img.width > 65535 || img.height > 65535)
        throw Error("encode_jfif: dimensions out of range");
    std::vector<std::uint8_t> out;
    auto u8 = [&](int v) { out.push_back(static_cast<std::uint8_t>(v)); };
    auto u16 = [&](int v) {
        u8((v >> 8) & 0xFF);
        u8(v & 0xFF);
    };
    auto marker = [&](int m) {
        u8(0xFF);
        u8(m);
    };

    marker(0xD8); // SOI
    marker(0xE0); // APP0 / JFIF
    u16(16);
    for (char c : {'J', 'F', 'I', 'F', '\0'}) u8(c);
    u8(1);
    u8(1); // version 1.1
    u8(0); // aspect ratio units
    u16(1);
    u16(1);
    u8(0);
    u8(0); // no thumbnail

    marker(0xDB); // DQT
    u16(67);
    u8(0x00); // 8-bit precision, table 0
    for (int k = 0; k < 64; ++k) {
        int e = img.table.entries[jfif::kZigzag[k]];
        if (e < 1 || e > 255) throw Error("encode_jfif: quant entry out of range");
        u8(e);
    }

    marker(0xC0); // SOF0, one component
    u16(11);
    u8(8);
    u16(img.height);
    u16(img.width);
    u8(1);
    u8(1);    // component id
    u8(0x11); // 1x1 sampling
    u8(0);    // quant table 0

    auto emit_dht = [&](int cls, const std::uint8_t* bits, const std::uint8_t* vals,
                        std::size_t nvals) {
        marker(0xC4);
        u16(static_cast<int>(2 + 1 + 16 + nvals));
        u8(cls << 4);
        for (int i = 0; i < 16; ++i) u8(bits[i]);
        for (std::size_t i = 0; i < nvals; ++i) u8(vals[i]);
    };
    emit_dht(0, jfif::kDcBits.data(), jfif::kDcVals.data(), jfif::kDcVals.size());
    emit_dht(1, jfif::kAcBits.data(), jfif::kAcVals.data(), jfif::kAcVals.size());

    marker(0xDA); // SOS
    u16(8);
    u8(1);
    u8(1);
    u8(0x00); // DC table 0, AC table 0
    u8(0);
    u8(63);
    u8(0);

    const jfif::HuffTable& dc = jfif::std_dc_table();
    const jfif::HuffTable& ac = jfif::std_ac_table();
    jfif::BitWriter bw(out);
    int pred = 0;
    for (int br = 0; br < img.blocks_y(); ++br) {
        for (int bc = 0; bc < img.blocks_x(); ++bc) {
            int zz[64];
            for (int k = 0; k < 64; ++k) {
                int idx = jfif::kZigzag[k];
                zz[k] = img.at(br * 8 + idx / 8, bc * 8 + idx % 8);
            }
            int diff = zz[0] - pred;
            pred = zz[0];
            int s = jfif::bit_category(diff);
            if (s > 11) throw Error("encode_jfif: DC difference out of range");
            bw.put(dc.code[s], dc.size[s]);
            if (s) bw.put(diff < 0 ? diff + (1 << s) - 1 : diff, s);

            int run = 0;
            for (int k = 1; k < 64; ++k) {
                if (zz[k] == 0) {
                    ++run;
                    continue;
                }
                while (run > 15) {
                    bw.put(ac.code[0xF0], ac.size[0xF0]); // ZRL
                    run -= 16;
                }
                int as = jfif::bit_category(zz[k]);
                if (as > 10) throw Error("encode_jfif: AC coefficient out of range");
                int sym = (run << 4) | as;
                bw.put(ac.code[sym], ac.size[sym]);
                bw.put(zz[k] < 0 ? zz[k] + (1 << as) - 1 : zz[k], as);
                run = 0;
            }
            if (run > 0) bw.put(ac.code[0x00], ac.size[0x00]); // EOB
        }
    }
    bw.flush();
    marker(0xD9); // EOI
    return out;
}

inline CoefImage decode_jfif(const std::vector<std::uint8_t>& data) {
    std::size_t pos = 0;
    auto need = [&](std::size_t n) {
        if (pos + n > data.size()) throw FormatError("jfif: truncated file");
    };
    auto u8 = [&]() {
        need(1);
        return data[pos++];
    };
    auto u16 = [&]() {
        need(2);
        int v = (data[pos] << 8) | data[pos + 1];
        pos += 2;
        return v;
    };

    need(2);
    if (u8() != 0xFF || u8() != 0xD8) throw FormatError("jfif: missing SOI");

    bool have_dqt = false, have_sof = false;
    QuantTable table;
    jfif::HuffTable dc_table, ac_table;
    bool have_dc = false, have_ac = false;
    int width = 0, height = 0;

    while (true) {
        need(2);
        if (u8() != 0xFF) throw FormatError("jfif: expected marker");
        int m = u8();
        while (m == 0xFF) m = u8(); // optional fill bytes
        if (m == 0xD9) throw FormatError("jfif: no scan data before EOI");

        if ((m >= 0xE0 && m <= 0xEF) || m == 0xFE) { // APPn / COM
            int len = u16();
            if (len < 2) throw FormatError("jfif: bad segment length");
            need(static_cast<std::size_t>(len) - 2);
            pos += len - 2;
            continue;
        }
        if (m == 0xDB) { // DQT, possibly several tables in one segment
            int len = u16() - 2;
            while (len > 0) {
                int pq_tq = u8();
                if ((pq_tq >> 4) != 0) throw FormatError("jfif: 16-bit quant tables unsupported");
                std::array<std::uint16_t, 64> entries{};
                for (int k = 0; k < 64; ++k) entries[jfif::kZigzag[k]] = u8();
                len -= 65;
                if ((pq_tq & 0x0F) == 0) {
                    table.entries = entries;
                    table.quality = match_ijg_quality(entries);
                    have_dqt = true;
                }
            }
            if (len != 0) throw FormatError("jfif: bad DQT length");
            continue;
        }
        if (m == 0xC4) { // DHT, possibly several tables
            int len = u16() - 2;
            while (len > 0) {
                int tc_th = u8();
                std::array<std::uint8_t, 16> bits{};
                std::size_t nvals = 0;
                for (int i = 0; i < 16; ++i) {
                    bits[i] = u8();
                    nvals += bits[i];
                }
                std::vector<std::uint8_t> vals(nvals);
                for (auto& v : vals) v = u8();
                len -= static_cast<int>(1 + 16 + nvals);
                if ((tc_th & 0x0F) == 0) {
                    if ((tc_th >> 4) == 0) {
                        dc_table = jfif::build_huff(bits.data(), vals.data(), nvals);
                        have_dc = true;
                    } else if ((tc_th >> 4) == 1) {
                        ac_table = jfif::build_huff(bits.data(), vals.data(), nvals);
                        have_ac = true;
                    }
                }
            }
            if (len != 0) throw FormatError("jfif: bad DHT length");
            continue;
        }
        if (m == 0xC0) { // SOF0: baseline sequential
            int len = u16();
            if (u8() != 8) throw FormatError("jfif: only 8-bit precision supported");
            height = u16();
            width = u16();
            int ncomp = u8();
            if (ncomp != 1) throw FormatError("jfif: color images unsupported");
            if (len != 8 + 3 * ncomp) throw FormatError("jfif: bad SOF0 length");
            u8(); // component id
            u8(); // sampling factors (single component: any factor means 1x1)
            if (u8() != 0) throw FormatError("jfif: component must use quant table 0");
            if (width < 1 || height < 1) throw FormatError("jfif: bad dimensions");
            have_sof = true;
            continue;
        }
        if (m == 0xC2) throw FormatError("jfif: progressive JPEG unsupported");
        if ((m >= 0xC1 && m <= 0xCF) && m != 0xC4 && m != 0xC8)
            throw FormatError("jfif: unsupported SOF type");
        if (m == 0xDD) { // DRI
            if (u16() != 4) throw FormatError("jfif: bad DRI length");
            if (u16() != 0) throw FormatError("jfif: restart markers unsupported");
            continue;
        }
        if (m == 0xDA) { // SOS
            if (!have_dqt || !have_sof || !have_dc || !have_ac)
                throw FormatError("jfif: scan before tables/frame header");
            int len = u16();
            int ncomp = u8();
            if (ncomp != 1 || len != 6 + 2 * ncomp) throw FormatError("jfif: bad SOS header");
            u8(); // component selector
            u8(); // entropy table ids (tables 0 enforced via DHT parse above)
            if (u8() != 0 || u8() != 63) throw FormatError("jfif: partial scans unsupported");
            u8(); // successive approximation
            break;
        }
        throw FormatError("jfif: unexpected marker");
    }

    CoefImage img;
    img.width = width;
    img.height = height;
    img.table = table;
    img.coef.assign(static_cast<std::size_t>(img.padded_width()) * img.padded_height(), 0);

    jfif::BitReader br(data, pos);
    int pred = 0;
    for (int by = 0; by < img.blocks_y(); ++by) {
        for (int bx = 0; bx < img.blocks_x(); ++bx) {
            int s = jfif::decode_huff_symbol(br, dc_table);
            if (s > 11) throw FormatError("jfif: bad DC category");
            int diff = jfif::extend_value(s ? br.get_bits(s) : 0, s);
            pred += diff;
            img.at(by * 8, bx * 8) = static_cast<std::int16_t>(pred);
            int k = 1;
            while (k < 64) {
                int sym = jfif::decode_huff_symbol(br, ac_table);
                int run = sym >> 4;
                int size = sym & 0x0F;
                if (size == 0) {
                    if (run == 15) { // ZRL
                        k += 16;
                        continue;
                    }
                    break; // EOB
                }
                k += run;
                if (k > 63) throw FormatError("jfif: AC run past end of block");
                int v = jfif::extend_value(br.get_bits(size), size);
                int idx = jfif::kZigzag[k];
                img.at(by * 8 + idx / 8, bx * 8 + idx % 8) = static_cast<std::int16_t>(v);
                ++k;
            }
        }
    }

    std::size_t mpos = br.finish();
    if (mpos + 1 >= data.size() || data[mpos] != 0xFF || data[mpos + 1] != 0xD9)
        throw FormatError("jfif: missing end-of-image marker");
    return img;
}

inline CoefImage read_jfif_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("jfif: cannot open " + path);
    std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(f)),
                                   std::istreambuf_iterator<char>());
    return decode_jfif(data);
}

inline void write_jfif_file(const std::string& path, const CoefImage& img) {
    auto data = encode_jfif(img);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("jfif: cannot open " + path + " for writing");
    f.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size()));
    if (!f) throw Error("jfif: write failed");
}

} // namespace rsteg
