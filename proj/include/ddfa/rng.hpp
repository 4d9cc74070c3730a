#pragma once

#include <cstdint>

namespace ddfa {

// SplitMix64: seedable, splittable 64-bit generator. All sampling in this
// project goes through it so results are bit-reproducible across platforms
// (std::uniform_int_distribution is implementation-defined, so we avoid it).
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform draw in [0, n); n > 0. Multiply-shift bounding; the bias of
    // 2^-64 per draw is irrelevant at the sample sizes used here.
    std::uint64_t next_below(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * n) >> 64);
    }

    // Uniform double in [0, 1).
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Independent stream i derived from this generator's current seed.
    // Stream i consumes nothing from the parent, so parallel or per-round
    // streams stay reproducible no matter how much each one draws.
    SplitMix64 split(std::uint64_t i) const {
        SplitMix64 g(state_ ^ (0x9e3779b97f4a7c15ULL * (i + 0x632be59bd9b4e019ULL)));
        g.next();
        return g;
    }

private:
    std::uint64_t state_;
};

// One-shot mix of two words, used for deriving seeds from (seed, index).
inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace ddfa
