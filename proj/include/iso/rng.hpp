#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "iso/bignat.hpp"

namespace iso {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// FNV-1a folded through splitmix so that short labels still spread well.
inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view label) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : label) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return splitmix64(seed ^ splitmix64(h));
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(splitmix64(seed) + index * 0xd1b54a32d192ed03ULL);
}

// Seeded stream. Sampling is done with explicit rejection so that results do
// not depend on the standard library's distribution implementations.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : seed_(seed), eng_(splitmix64(seed)) {}
    RandomStream(std::uint64_t seed, std::string_view label) : RandomStream(derive_seed(seed, label)) {}

    std::uint64_t seed() const { return seed_; }
    RandomStream split(std::string_view label) const { return RandomStream(seed_, label); }

    std::uint64_t next() {
        bits_ += 64;
        return eng_();
    }

    // uniform in [lo, hi]
    std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) {
        if (lo > hi) throw PreconditionError("empty range");
        std::uint64_t span = hi - lo;
        if (span == ~std::uint64_t{0}) return next();
        std::uint64_t range = span + 1;
        std::uint64_t threshold = (0 - range) % range; // 2^64 mod range
        for (;;) {
            std::uint64_t x = next();
            if (x >= threshold) return lo + x % range;
        }
    }

    BigNat uniform(const BigNat& lo, const BigNat& hi) {
        if (lo > hi) throw PreconditionError("empty range");
        BigNat span = hi - lo;
        if (fits_u64(span) && fits_u64(lo) && fits_u64(hi)) return BigNat(uniform(to_u64(lo), to_u64(hi)));
        std::size_t bits = bit_length(span);
        for (;;) {
            BigNat x = 0;
            std::size_t got = 0;
            while (got < bits) {
                x <<= 64;
                x |= next();
                got += 64;
            }
            x >>= (got - bits);
            if (x <= span) return lo + x;
        }
    }

    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    std::uint64_t bits_drawn() const { return bits_; }

    std::mt19937_64& engine() { return eng_; }

private:
    std::uint64_t seed_;
    std::mt19937_64 eng_;
    std::uint64_t bits_ = 0;
};

} // namespace iso
