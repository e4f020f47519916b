#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "rsteg/bench/corpus.hpp"
#include "rsteg/jpeg/jfif.hpp"
#include "rsteg/util/rng.hpp"

using namespace rsteg;

namespace {

CoefImage random_coefs(int w, int h, int quality, std::uint64_t seed, int spread = 40) {
    CoefImage c;
    c.width = w;
    c.height = h;
    c.table = quant_table(quality);
    c.coef.resize(static_cast<std::size_t>(c.padded_width()) * c.padded_height());
    Rng rng(seed);
    for (auto& v : c.coef)
        v = static_cast<std::int16_t>(static_cast<long long>(rng.next_below(2 * spread + 1)) - spread);
    return c;
}

// Patch the first occurrence of a marker byte pair (FF xx -> FF yy).
std::vector<std::uint8_t> patch_marker(std::vector<std::uint8_t> bytes, std::uint8_t from,
                                       std::uint8_t to) {
    for (std::size_t i = 0; i + 1 < bytes.size(); ++i) {
        if (bytes[i] == 0xFF && bytes[i + 1] == from) {
            bytes[i + 1] = to;
            return bytes;
        }
    }
    FAIL("marker not found");
    return bytes;
}

} // namespace

TEST_CASE("encode/decode round trip is coefficient exact") {
    for (auto [w, h] : {std::pair{64, 64}, {17, 9}, {160, 160}, {8, 8}, {1, 1}}) {
        CoefImage c = random_coefs(w, h, 65, 1000 + w * h);
        auto bytes = encode_jfif(c);
        CoefImage back = decode_jfif(bytes);
        REQUIRE(back.width == c.width);
        REQUIRE(back.height == c.height);
        REQUIRE(back.table == c.table);
        REQUIRE(back.coef == c.coef);
    }
}

TEST_CASE("round trip on compressed corpus images") {
    CorpusSpec spec;
    spec.width = 72;
    spec.height = 56;
    spec.count = 2;
    for (const auto& img : synth_corpus(spec)) {
        CoefImage c = compress(img, 65);
        CoefImage back = decode_jfif(encode_jfif(c));
        REQUIRE(back.coef == c.coef);
        REQUIRE(back.table == c.table);
    }
}

TEST_CASE("all-zero image round trips") {
    CoefImage c;
    c.width = 16;
    c.height = 16;
    c.table = quant_table(75);
    c.coef.assign(16 * 16, 0);
    CoefImage back = decode_jfif(encode_jfif(c));
    REQUIRE(back.coef == c.coef);
}

TEST_CASE("large coefficients survive (byte stuffing path)") {
    // Values big enough to emit long Huffman codes and 0xFF bytes in the
    // entropy stream with overwhelming probability.
    CoefImage c = random_coefs(64, 64, 65, 77, 900);
    CoefImage back = decode_jfif(encode_jfif(c));
    REQUIRE(back.coef == c.coef);
}

TEST_CASE("decoded quant table matches the encoder's") {
    for (int q : {30, 65, 95}) {
        CoefImage c = random_coefs(24, 24, q, q);
        CoefImage back = decode_jfif(encode_jfif(c));
        REQUIRE(back.table.entries == quant_table(q).entries);
        REQUIRE(back.table.quality == q);
    }
}

TEST_CASE("progressive and color files are rejected") {
    CoefImage c = random_coefs(16, 16, 65, 5);
    auto bytes = encode_jfif(c);
    REQUIRE_THROWS_AS(decode_jfif(patch_marker(bytes, 0xC0, 0xC2)), FormatError); // progressive
    REQUIRE_THROWS_AS(decode_jfif(patch_marker(bytes, 0xC0, 0xC1)), FormatError); // extended seq.
    REQUIRE_THROWS_AS(decode_jfif(patch_marker(bytes, 0xC0, 0xC9)), FormatError); // arithmetic
}

TEST_CASE("truncated or garbage input is rejected") {
    CoefImage c = random_coefs(16, 16, 65, 6);
    auto bytes = encode_jfif(c);
    bytes.resize(bytes.size() / 2);
    REQUIRE_THROWS_AS(decode_jfif(bytes), FormatError);
    REQUIRE_THROWS_AS(decode_jfif({0x00, 0x01, 0x02}), FormatError);
    REQUIRE_THROWS_AS(decode_jfif({}), FormatError);
}

TEST_CASE("file helpers round trip through disk") {
    CoefImage c = random_coefs(40, 24, 65, 8);
    std::string path = "/tmp/rsteg_test_roundtrip.jpg";
    write_jfif_file(path, c);
    CoefImage back = read_jfif_file(path);
    REQUIRE(back.coef == c.coef);
}
