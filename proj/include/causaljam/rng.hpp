#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace causaljam {

/// Small deterministic generator (splitmix64). The standard library engines
/// are portable but the distributions are not; everything here is pinned so
/// that a given seed produces the same stream on every platform and compiler.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Unbiased draw from [0, bound) via rejection.
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("Rng::below: bound must be positive");
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t v = next_u64();
        while (v >= limit) v = next_u64();
        return v % bound;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return unit() < p; }

    /// Uniform k-subset of {0, ..., l-1}, returned sorted ascending.
    /// Partial Fisher-Yates, so every subset has probability 1/C(l, k).
    std::vector<std::uint32_t> subset(std::uint32_t l, std::uint32_t k) {
        if (k > l) throw std::invalid_argument("Rng::subset: k exceeds l");
        std::vector<std::uint32_t> idx(l);
        std::iota(idx.begin(), idx.end(), 0u);
        for (std::uint32_t i = 0; i < k; ++i) {
            const auto j = i + static_cast<std::uint32_t>(below(l - i));
            std::swap(idx[i], idx[j]);
        }
        idx.resize(k);
        std::sort(idx.begin(), idx.end());
        return idx;
    }

private:
    std::uint64_t state_;
};

/// Stable per-trial seed derivation: mixing is one splitmix64 step over the
/// master seed offset by the (salted) index, so any subset of trials can be
/// reproduced without running the others.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace causaljam
