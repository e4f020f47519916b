#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace rsteg {

// splitmix64; used for all seed derivation so results do not depend on the
// platform's std:: distributions.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Stable sub-seed derivation: mix a seed with a small tag.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
    std::uint64_t s = seed ^ (0xA0761D6478BD642FULL * (tag + 1));
    return splitmix64_next(s);
}

// Small deterministic generator. Never replaced by std engines: identical
// output on every platform is part of the reproducibility contract.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() { return splitmix64_next(state_); }

    // Uniform in [0, n).
    std::uint64_t next_below(std::uint64_t n) {
        // Modulo bias is ~2^-64 * n: irrelevant for the sizes used here.
        return n ? next_u64() % n : 0;
    }

    int next_bit() { return static_cast<int>(next_u64() >> 63); }

    // Uniform in [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Box-Muller, hand rolled for determinism.
    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        do {
            u1 = next_double();
        } while (u1 <= 1e-300);
        double u2 = next_double();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    std::vector<std::uint8_t> next_bits(std::size_t n) {
        std::vector<std::uint8_t> out(n);
        for (auto& b : out) b = static_cast<std::uint8_t>(next_bit());
        return out;
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace rsteg
