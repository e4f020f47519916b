#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "rsteg/util/error.hpp"

// Key-driven sequence scrambling. The permutation comes from a Fisher-Yates
// shuffle driven by a fixed 64-bit LCG, so both sides derive it from the key
// and the sequence length alone.

namespace rsteg {

class ScrambleLcg {
public:
    explicit ScrambleLcg(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
        return state_;
    }

private:
    std::uint64_t state_;
};

inline std::vector<std::uint32_t> scramble_permutation(std::size_t n, std::uint64_t key) {
    std::vector<std::uint32_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0u);
    ScrambleLcg lcg(key);
    for (std::size_t i = n; i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(lcg.next() % i);
        std::swap(perm[i - 1], perm[j]);
    }
    return perm;
}

// out[i] = in[perm[i]]
template <typename T>
std::vector<T> scramble(const std::vector<T>& in, std::uint64_t key) {
    auto perm = scramble_permutation(in.size(), key);
    std::vector<T> out(in.size());
    for (std::size_t i = 0; i < in.size(); ++i) out[i] = in[perm[i]];
    return out;
}

// Exact inverse of scramble with the same key.
template <typename T>
std::vector<T> descramble(const std::vector<T>& in, std::uint64_t key) {
    auto perm = scramble_permutation(in.size(), key);
    std::vector<T> out(in.size());
    for (std::size_t i = 0; i < in.size(); ++i) out[perm[i]] = in[i];
    return out;
}

} // namespace rsteg
