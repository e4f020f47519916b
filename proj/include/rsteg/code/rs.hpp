#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "rsteg/util/bits.hpp"
#include "rsteg/util/error.hpp"

// Reed-Solomon over GF(256) with the 0x11D field polynomial, narrow-sense
// style with roots alpha^0..alpha^(2t-1). The layered check codes use
// RS(255,251) (t = 2); the generic encoder/decoder below supports any t and
// shortened codes. Decoding never reports success on inconsistent syndromes:
// every correction is re-verified against all syndromes.

namespace rsteg {

namespace gf256 {

inline constexpr int kPoly = 0x11D;

struct Tables {
    std::array<std::uint8_t, 512> exp{};
    std::array<int, 256> log{};
};

inline const Tables& tables() {
    static const Tables t = [] {
        Tables t{};
        int x = 1;
        for (int i = 0; i < 255; ++i) {
            t.exp[i] = static_cast<std::uint8_t>(x);
            t.log[x] = i;
            x <<= 1;
            if (x & 0x100) x ^= kPoly;
        }
        for (int i = 255; i < 512; ++i) t.exp[i] = t.exp[i - 255];
        t.log[0] = -1;
        return t;
    }();
    return t;
}

inline std::uint8_t mul(std::uint8_t a, std::uint8_t b) {
    if (a == 0 || b == 0) return 0;
    const Tables& t = tables();
    return t.exp[t.log[a] + t.log[b]];
}

inline std::uint8_t div(std::uint8_t a, std::uint8_t b) {
    if (b == 0) throw Error("gf256: division by zero");
    if (a == 0) return 0;
    const Tables& t = tables();
    return t.exp[t.log[a] + 255 - t.log[b]];
}

inline std::uint8_t pow_alpha(int e) {
    e %= 255;
    if (e < 0) e += 255;
    return tables().exp[e];
}

inline std::uint8_t inv(std::uint8_t a) { return div(1, a); }

} // namespace gf256

struct RsCode {
    int nparity; // 2t

    explicit RsCode(int t = 2) : nparity(2 * t) {
        if (t < 1 || 2 * t > 254) throw Error("rs: bad correction capacity");
    }

    int t() const { return nparity / 2; }
    int max_data() const { return 255 - nparity; }

    // Generator polynomial (x - a^0)...(x - a^(2t-1)), ascending powers.
    const std::vector<std::uint8_t>& generator() const {
        if (gen_.empty()) {
            gen_ = {1};
            for (int i = 0; i < nparity; ++i) {
                std::vector<std::uint8_t> next(gen_.size() + 1, 0);
                std::uint8_t root = gf256::pow_alpha(i);
                for (std::size_t j = 0; j < gen_.size(); ++j) {
                    next[j + 1] ^= gen_[j];
                    next[j] ^= gf256::mul(gen_[j], root);
                }
                gen_ = std::move(next);
            }
        }
        return gen_;
    }

    // Systematic parity of up to max_data() data symbols (shortened codes pad
    // with leading zeros, which does not change the parity).
    std::vector<std::uint8_t> parity(const std::vector<std::uint8_t>& data) const {
        if (static_cast<int>(data.size()) > max_data()) throw Error("rs: data too long");
        const auto& g = generator();
        std::vector<std::uint8_t> rem(nparity, 0);
        for (std::uint8_t d : data) {
            std::uint8_t feedback = static_cast<std::uint8_t>(d ^ rem[nparity - 1]);
            for (int j = nparity - 1; j > 0; --j) {
                rem[j] = static_cast<std::uint8_t>(rem[j - 1] ^
                                                   gf256::mul(feedback, g[j]));
            }
            rem[0] = gf256::mul(feedback, g[0]);
        }
        // highest-degree parity symbol first, matching codeword order
        return std::vector<std::uint8_t>(rem.rbegin(), rem.rend());
    }

    struct DecodeResult {
        std::vector<std::uint8_t> data;
        int corrected = 0;
        bool ok = false;
    };

    // Corrects up to t symbol errors in (data || parity); data may be
    // shortened. On failure `data` holds the uncorrected input.
    DecodeResult decode(const std::vector<std::uint8_t>& data,
                        const std::vector<std::uint8_t>& par) const {
        if (static_cast<int>(par.size()) != nparity) throw Error("rs: bad parity length");
        if (static_cast<int>(data.size()) > max_data()) throw Error("rs: data too long");
        DecodeResult res;
        res.data = data;

        // codeword coefficients: data[0] is the highest power; virtual leading
        // zeros of the shortened code do not affect syndromes
        int n = static_cast<int>(data.size()) + nparity;
        auto sym = [&](int idx) -> std::uint8_t { // idx 0 = first transmitted
            return idx < static_cast<int>(data.size())
                       ? data[idx]
                       : par[idx - data.size()];
        };

        std::vector<std::uint8_t> synd(nparity, 0);
        bool all_zero = true;
        for (int i = 0; i < nparity; ++i) {
            std::uint8_t a = gf256::pow_alpha(i);
            std::uint8_t acc = 0;
            for (int k = 0; k < n; ++k) acc = static_cast<std::uint8_t>(gf256::mul(acc, a) ^ sym(k));
            synd[i] = acc;
            if (acc) all_zero = false;
        }
        if (all_zero) {
            res.ok = true;
            return res;
        }

        // Berlekamp-Massey for the error locator.
        std::vector<std::uint8_t> sigma = {1}, prev = {1};
        int L = 0, m = 1;
        std::uint8_t b = 1;
        for (int i = 0; i < nparity; ++i) {
            std::uint8_t delta = synd[i];
            for (int j = 1; j <= L && j < static_cast<int>(sigma.size()); ++j)
                delta = static_cast<std::uint8_t>(delta ^ gf256::mul(sigma[j], synd[i - j]));
            if (delta == 0) {
                ++m;
            } else if (2 * L <= i) {
                std::vector<std::uint8_t> tmp = sigma;
                std::uint8_t scale = gf256::div(delta, b);
                if (sigma.size() < prev.size() + m) sigma.resize(prev.size() + m, 0);
                for (std::size_t j = 0; j < prev.size(); ++j)
                    sigma[j + m] = static_cast<std::uint8_t>(sigma[j + m] ^
                                                             gf256::mul(scale, prev[j]));
                L = i + 1 - L;
                prev = std::move(tmp);
                b = delta;
                m = 1;
            } else {
                std::uint8_t scale = gf256::div(delta, b);
                if (sigma.size() < prev.size() + m) sigma.resize(prev.size() + m, 0);
                for (std::size_t j = 0; j < prev.size(); ++j)
                    sigma[j + m] = static_cast<std::uint8_t>(sigma[j + m] ^
                                                             gf256::mul(scale, prev[j]));
                ++m;
            }
        }
        if (L > t()) return res; // too many errors

        // Chien search over the valid (possibly shortened) positions.
        std::vector<int> err_pos;
        for (int k = 0; k < n; ++k) {
            // position k has locator root alpha^{-(n-1-k)}
            std::uint8_t x = gf256::pow_alpha(-(n - 1 - k));
            std::uint8_t acc = 0;
            for (int j = static_cast<int>(sigma.size()) - 1; j >= 0; --j)
                acc = static_cast<std::uint8_t>(gf256::mul(acc, x) ^ sigma[j]);
            if (acc == 0) err_pos.push_back(k);
        }
        if (static_cast<int>(err_pos.size()) != L) return res; // locator degree mismatch

        // Forney error values with the error evaluator omega = synd*sigma mod x^(2t).
        std::vector<std::uint8_t> omega(nparity, 0);
        for (int i = 0; i < nparity; ++i) {
            std::uint8_t acc = 0;
            for (int j = 0; j <= i && j < static_cast<int>(sigma.size()); ++j)
                acc = static_cast<std::uint8_t>(acc ^ gf256::mul(sigma[j], synd[i - j]));
            omega[i] = acc;
        }
        std::vector<std::uint8_t> fixed(n);
        for (int k = 0; k < n; ++k) fixed[k] = sym(k);
        for (int k : err_pos) {
            std::uint8_t locator = gf256::pow_alpha(n - 1 - k);   // X_k
            std::uint8_t root = gf256::pow_alpha(-(n - 1 - k));   // X_k^{-1}
            std::uint8_t num = 0;
            for (int j = static_cast<int>(omega.size()) - 1; j >= 0; --j)
                num = static_cast<std::uint8_t>(gf256::mul(num, root) ^ omega[j]);
            // formal derivative keeps odd-power terms (characteristic 2)
            std::uint8_t den = 0;
            for (std::size_t j = 1; j < sigma.size(); j += 2) {
                std::uint8_t term = sigma[j];
                for (std::size_t p = 1; p < j; ++p) term = gf256::mul(term, root);
                den = static_cast<std::uint8_t>(den ^ term);
            }
            if (den == 0) return res;
            // e_k = X_k * omega(X_k^{-1}) / sigma'(X_k^{-1}) for roots alpha^0..
            std::uint8_t ev = gf256::mul(locator, gf256::div(num, den));
            fixed[k] = static_cast<std::uint8_t>(fixed[k] ^ ev);
        }

        // Re-verify every syndrome on the corrected word.
        for (int i = 0; i < nparity; ++i) {
            std::uint8_t a = gf256::pow_alpha(i);
            std::uint8_t acc = 0;
            for (int k = 0; k < n; ++k)
                acc = static_cast<std::uint8_t>(gf256::mul(acc, a) ^ fixed[k]);
            if (acc != 0) return res;
        }
        res.data.assign(fixed.begin(), fixed.begin() + data.size());
        res.corrected = L;
        res.ok = true;
        return res;
    }

private:
    mutable std::vector<std::uint8_t> gen_;
};

} // namespace rsteg
