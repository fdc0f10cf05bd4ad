#pragma once

#include <cstdint>

namespace qpovm {

// Finalizer step of splitmix64; full-avalanche 64-bit mix.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// splitmix64 (Steele/Lea/Flood): tiny seedable generator whose substreams are
// derived by hashing, so every Monte-Carlo trial is reproducible no matter how
// the trial loop is scheduled.
class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    constexpr std::uint64_t next() noexcept {
        state_ += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform double in [0, 1) with 53 random bits
    constexpr double next_unit() noexcept {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

// Generator for trial `index` of logical stream `stream`, derived from the
// run seed. Order-dependent nesting keeps (stream, index) pairs distinct.
constexpr SplitMix64 substream(std::uint64_t seed, std::uint64_t stream,
                               std::uint64_t index) noexcept {
    return SplitMix64(mix64(mix64(mix64(seed) ^ stream) ^ index));
}

}  // namespace qpovm
