#include <catch2/catch_amalgamated.hpp>

#include "rsteg/bench/corpus.hpp"
#include "rsteg/dm/dither.hpp"
#include "rsteg/util/rng.hpp"

using namespace rsteg;

TEST_CASE("interval index and parity on both axes") {
    // centered cells: interval n covers [(n-1/2)q, (n+1/2)q
    REQUIRE(interval_index(23.0, 10.0) == 2);
    REQUIRE(interval_bit(2) == 0);
    REQUIRE(interval_index(-7.0, 10.0) == -1);
    REQUIRE(interval_bit(-1) == 1);
    REQUIRE(interval_index(0.0, 10.0) == 0);
    REQUIRE(interval_index(4.9, 10.0) == 0);
    REQUIRE(interval_index(5.0, 10.0) == 1); // tie rounds away from zero
    REQUIRE(interval_index(-5.0, 10.0) == -1);
    REQUIRE(interval_bit(-3) == 1);
    REQUIRE(interval_bit(-4) == 0);
    REQUIRE_THROWS_AS(interval_index(1.0, 0.0), Error);
}

TEST_CASE("neighbor distances sum to 2q") {
    Rng rng(11);
    for (int t = 0; t < 500; ++t) {
        double q = 1.0 + static_cast<double>(rng.next_below(30));
        double v = (rng.next_double() - 0.5) * 40.0 * q;
        DitherDistances d = dither_distances(v, q);
        REQUIRE(d.d_minus + d.d_plus == Catch::Approx(2.0 * q).margin(1e-9));
        REQUIRE(d.d_minus >= 0.5 * q - 1e-9);
        REQUIRE(d.d_plus >= 0.5 * q - 1e-9);
    }
    // a value sitting exactly on a reconstruction point is q from both sides
    DitherDistances d = dither_distances(30.0, 10.0);
    REQUIRE(d.n == 3);
    REQUIRE(d.bit == 1);
    REQUIRE(d.d_minus == Catch::Approx(10.0));
    REQUIRE(d.d_plus == Catch::Approx(10.0));
    // off-center value: 23 is 13 above middle 10 and 7 below middle 30
    DitherDistances d2 = dither_distances(23.0, 10.0);
    REQUIRE(d2.d_minus == Catch::Approx(13.0));
    REQUIRE(d2.d_plus == Catch::Approx(7.0));
}

TEST_CASE("cover extraction reads parity of stored coefficients") {
    CorpusSpec spec;
    spec.width = 48;
    spec.height = 48;
    spec.count = 1;
    CoefImage img = compress(synth_corpus(spec)[0], 65);
    DomainSpec dom = parse_domain("E_45");
    CoverSequence seq = extract_cover(img, dom);
    REQUIRE(seq.size() == 9u * 36u);
    for (std::size_t e = 0; e < seq.size(); ++e) {
        int c = img.coef[seq.positions[e]];
        REQUIRE(static_cast<int>(seq.bits[e]) == ((c % 2) + 2) % 2);
        // intact stored values sit on middles: both neighbors at exactly q
        REQUIRE(seq.d_minus[e] == Catch::Approx(seq.q[e]));
        REQUIRE(seq.d_plus[e] == Catch::Approx(seq.q[e]));
        REQUIRE(seq.q[e] >= 1.0);
    }
    REQUIRE(extract_bits(img, dom) == seq.bits);
}

TEST_CASE("apply then extract returns the requested bits exactly") {
    CorpusSpec spec;
    spec.width = 64;
    spec.height = 40;
    spec.count = 2;
    auto imgs = synth_corpus(spec);
    DomainSpec dom = parse_domain("E_2345");
    Rng rng(77);
    for (const auto& px : imgs) {
        CoefImage cover = compress(px, 65);
        CoverSequence seq = extract_cover(cover, dom);
        BitVec want = rng.next_bits(seq.size());
        CoefImage stego = apply_stego(cover, seq, want);
        REQUIRE(extract_bits(stego, dom) == want);
        // untouched positions are bit-identical
        std::size_t changed = 0;
        for (std::size_t e = 0; e < seq.size(); ++e) {
            int dc = std::abs(stego.coef[seq.positions[e]] - cover.coef[seq.positions[e]]);
            REQUIRE(dc <= 1);
            changed += dc;
        }
        REQUIRE(changed == hamming_distance(want, seq.bits));
        REQUIRE(coef_diff_count(cover, stego) == changed);
    }
}

TEST_CASE("default flip direction is toward zero, away from zero at zero") {
    CoefImage img;
    img.width = 8;
    img.height = 8;
    img.table = quant_table(65);
    img.coef.assign(64, 0);
    DomainSpec dom = parse_domain("E_4");
    auto pos = domain_positions(dom, img);
    img.coef[pos[0]] = 5;
    img.coef[pos[1]] = -5;
    img.coef[pos[2]] = 0;
    img.coef[pos[3]] = 2;
    CoverSequence seq = extract_cover(img, dom);
    BitVec want = {0, 0, 1, 1};
    CoefImage stego = apply_stego(img, seq, want);
    REQUIRE(stego.coef[pos[0]] == 4);
    REQUIRE(stego.coef[pos[1]] == -4);
    REQUIRE(stego.coef[pos[2]] == 1);
    REQUIRE(stego.coef[pos[3]] == 1);
}

TEST_CASE("explicit directions are honored and validated") {
    CoefImage img;
    img.width = 8;
    img.height = 8;
    img.table = quant_table(65);
    img.coef.assign(64, 0);
    DomainSpec dom = parse_domain("E_4");
    auto pos = domain_positions(dom, img);
    img.coef[pos[0]] = 5;
    img.coef[pos[1]] = 6;
    CoverSequence seq = extract_cover(img, dom);
    BitVec want = {0, 1, 0, 0};
    Directions dir = {+1, -1, 0, 0};
    CoefImage stego = apply_stego(img, seq, want, &dir);
    REQUIRE(stego.coef[pos[0]] == 6);
    REQUIRE(stego.coef[pos[1]] == 5);
    REQUIRE(extract_bits(stego, dom) == want);

    Directions bad = {0, -1, 0, 0}; // leaves element 0 at odd parity but bit 0 requested
    REQUIRE_THROWS_AS(apply_stego(img, seq, want, &bad), Error);
    BitVec short_bits = {0, 1};
    REQUIRE_THROWS_AS(apply_stego(img, seq, short_bits), Error);
}

TEST_CASE("reads against a reference lattice survive value drift below q/2") {
    CoefImage img;
    img.width = 8;
    img.height = 8;
    img.table = quant_table(65);
    img.coef.assign(64, 0);
    DomainSpec dom = parse_domain("E_4");
    auto pos = domain_positions(dom, img);
    img.coef[pos[0]] = 3;

    // same lattice: index equals the stored coefficient
    auto vals = extract_values(img, dom, img.table);
    REQUIRE(vals[0] == 3);
    REQUIRE(extract_bits(img, dom, img.table) == extract_bits(img, dom));

    // attacked copy stored with a finer table: value moves but stays in cell
    CoefImage fine = img;
    fine.table = quant_table(100); // all steps 1
    int i = static_cast<int>(pos[0] / img.padded_width()) % 8;
    int j = static_cast<int>(pos[0] % img.padded_width()) % 8;
    double q = img.table.step(i, j);
    fine.coef[pos[0]] = static_cast<std::int16_t>(3 * q + q / 4); // drift q/4 < q/2
    auto vals2 = extract_values(fine, dom, img.table);
    REQUIRE(vals2[0] == 3);
}
