#pragma once

#include <cstdint>

namespace treemat {

// splitmix64 generator (Steele, Lea, Flood; public domain reference
// implementation). Used instead of <random> engines plus distributions
// because generated trees must be byte-identical across platforms and
// standard library distribution implementations differ.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform value in [0, bound) via rejection sampling, so the result is
    // unbiased and reproducible for any bound.
    std::uint64_t below(std::uint64_t bound) {
        if (bound <= 1) {
            return 0;
        }
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t v = next();
        while (v >= limit) {
            v = next();
        }
        return v % bound;
    }

private:
    std::uint64_t state_;
};

}  // namespace treemat
