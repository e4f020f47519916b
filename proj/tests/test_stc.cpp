#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "rsteg/code/stc.hpp"
#include "rsteg/util/rng.hpp"

using namespace rsteg;

namespace {

// Parity-check matrix H (m x n) assembled row by row from the column
// patterns; the oracle works on this explicit matrix only.
std::vector<BitVec> build_h(std::size_t n, std::size_t m, const StcParams& params) {
    std::vector<BitVec> h(m, BitVec(n, 0));
    for (std::size_t j = 0; j < n; ++j) {
        std::uint32_t pat = stc_detail::column_pattern(params.key, j, params.h);
        std::size_t bj = stc_detail::column_row(j, n, m);
        for (int t = 0; t < params.h; ++t) {
            if (bj + t >= m) break;
            if (pat >> t & 1u) h[bj + t][j] = 1;
        }
    }
    return h;
}

BitVec apply_h(const std::vector<BitVec>& h, const BitVec& y) {
    BitVec out(h.size(), 0);
    for (std::size_t r = 0; r < h.size(); ++r) {
        int acc = 0;
        for (std::size_t j = 0; j < y.size(); ++j) acc ^= h[r][j] & y[j];
        out[r] = static_cast<std::uint8_t>(acc);
    }
    return out;
}

// Exhaustive search over all 2^n stego candidates.
struct CosetBest {
    bool feasible = false;
    double cost = 0.0;
};

CosetBest coset_minimum(const BitVec& cover, const std::vector<double>& cost,
                        const BitVec& message, const std::vector<BitVec>& h) {
    std::size_t n = cover.size();
    CosetBest best;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        BitVec y(n);
        for (std::size_t j = 0; j < n; ++j) y[j] = (mask >> j) & 1;
        if (apply_h(h, y) != message) continue;
        double c = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            if (y[j] != cover[j]) c += cost[j];
        if (!best.feasible || c < best.cost) {
            best.feasible = true;
            best.cost = c;
        }
    }
    return best;
}

} // namespace

TEST_CASE("embedding is exactly coset optimal on small instances") {
    Rng rng(1);
    int done = 0;
    while (done < 1000) {
        std::size_t n = 4 + rng.next_below(9); // 4..12
        std::size_t m = 1 + rng.next_below(n);
        StcParams params{2 + static_cast<int>(rng.next_below(5)), rng.next_u64()};
        BitVec cover = rng.next_bits(n);
        BitVec message = rng.next_bits(m);
        std::vector<double> cost(n);
        for (auto& c : cost) c = 0.01 + rng.next_double() * 10.0;

        auto h = build_h(n, m, params);
        CosetBest oracle = coset_minimum(cover, cost, message, h);

        if (!oracle.feasible) {
            REQUIRE_THROWS_AS(stc_embed(cover, cost, message, params), EmbedError);
        } else {
            StcResult got = stc_embed(cover, cost, message, params);
            REQUIRE(got.cost == Catch::Approx(oracle.cost).epsilon(1e-12));
            REQUIRE(apply_h(h, got.stego) == message);
            double recount = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                if (got.stego[j] != cover[j]) recount += cost[j];
            REQUIRE(got.cost == Catch::Approx(recount).epsilon(1e-12));
        }
        ++done;
    }
}

TEST_CASE("syndrome property holds at production sizes") {
    Rng rng(2);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t n = 500 + rng.next_below(2000);
        std::size_t m = 20 + rng.next_below(n / 4);
        StcParams params{10, rng.next_u64()};
        BitVec cover = rng.next_bits(n);
        BitVec message = rng.next_bits(m);
        std::vector<double> cost(n);
        for (auto& c : cost) c = 0.01 + rng.next_double() * 3.0;

        StcResult got = stc_embed(cover, cost, message, params);
        REQUIRE(stc_extract(got.stego, m, params) == message);
    }
}

TEST_CASE("already-satisfied syndrome keeps the cover") {
    Rng rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t n = 40 + rng.next_below(200);
        std::size_t m = 5 + rng.next_below(30);
        StcParams params{6, rng.next_u64()};
        BitVec cover = rng.next_bits(n);
        std::vector<double> cost(n, 1.0);
        BitVec message = stc_extract(cover, m, params);
        StcResult got = stc_embed(cover, cost, message, params);
        REQUIRE(got.stego == cover);
        REQUIRE(got.cost == 0.0);
    }
}

TEST_CASE("all-zero stego decodes to an all-zero message") {
    BitVec stego(300, 0);
    StcParams params{10, 42};
    BitVec msg = stc_extract(stego, 50, params);
    for (auto b : msg) REQUIRE(b == 0);
}

TEST_CASE("wet columns are never flipped; all-wet instances fail cleanly") {
    Rng rng(4);
    const double inf = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t n = 60;
        std::size_t m = 12;
        StcParams params{6, rng.next_u64()};
        BitVec cover = rng.next_bits(n);
        std::vector<double> cost(n, 1.0);
        std::vector<std::size_t> wet;
        for (std::size_t j = 0; j < n; j += 3) {
            cost[j] = inf;
            wet.push_back(j);
        }
        BitVec message = rng.next_bits(m);
        StcResult got;
        try {
            got = stc_embed(cover, cost, message, params);
        } catch (const EmbedError&) {
            continue; // infeasible under these wet constraints: acceptable
        }
        for (std::size_t j : wet) REQUIRE(got.stego[j] == cover[j]);
        REQUIRE(stc_extract(got.stego, m, params) == message);
    }

    // fully wet cover with an unsatisfied syndrome cannot embed
    BitVec cover(8, 0);
    std::vector<double> cost(8, inf);
    BitVec message(8, 1);
    REQUIRE_THROWS_AS(stc_embed(cover, cost, message, StcParams{2, 7}), EmbedError);
}

TEST_CASE("a single stego flip disturbs only the column's message window") {
    Rng rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t n = 400;
        std::size_t m = 100;
        StcParams params{10, rng.next_u64()};
        BitVec stego = rng.next_bits(n);
        BitVec base = stc_extract(stego, m, params);

        std::size_t j = rng.next_below(n);
        BitVec flipped = stego;
        flipped[j] ^= 1;
        BitVec msg = stc_extract(flipped, m, params);

        std::size_t bj = stc_detail::column_row(j, n, m);
        std::size_t changed = 0;
        for (std::size_t r = 0; r < m; ++r) {
            if (msg[r] != base[r]) {
                ++changed;
                REQUIRE(r >= bj);
                REQUIRE(r < bj + static_cast<std::size_t>(params.h));
            }
        }
        REQUIRE(changed >= 1); // first pattern row is always set
    }
}

TEST_CASE("trellis parameter validation") {
    BitVec cover(10, 0);
    std::vector<double> cost(10, 1.0);
    BitVec msg(11, 0);
    REQUIRE_THROWS_AS(stc_embed(cover, cost, msg, StcParams{10, 0}), CapacityError);
    BitVec msg2(5, 0);
    std::vector<double> shortcost(9, 1.0);
    REQUIRE_THROWS_AS(stc_embed(cover, shortcost, msg2, StcParams{10, 0}), Error);
    REQUIRE_THROWS_AS(stc_embed(cover, cost, msg2, StcParams{1, 0}), Error);
    REQUIRE_THROWS_AS(stc_embed(cover, cost, msg2, StcParams{17, 0}), Error);
    REQUIRE_THROWS_AS(stc_extract(cover, 11, StcParams{10, 0}), Error);
}
