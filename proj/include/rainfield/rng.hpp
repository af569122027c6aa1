#pragma once

#include "rainfield/normal.hpp"

#include <cmath>
#include <cstdint>

namespace rainfield {

// Counter-keyed randomness: every consumer derives its stream from a
// (seed, index, term, kind) tuple, so realizations are pure functions of
// their key and independent of scheduling. SplitMix64 is used both as the
// key mixer and as the stream generator; its output is platform-stable.

constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

enum class StreamKind : std::uint64_t {
    BrownianXPos = 0,
    BrownianXNeg = 1,
    BrownianYPos = 2,
    BrownianYNeg = 3,
    Exponential = 4,
    DayPick = 5,
    SynthBulk = 6,
    Generic = 7,
};

inline std::uint64_t stream_key(std::uint64_t seed, std::uint64_t index, std::uint64_t term,
                                StreamKind kind) {
    std::uint64_t h = mix64(seed);
    h = mix64(h ^ index);
    h = mix64(h ^ term);
    h = mix64(h ^ static_cast<std::uint64_t>(kind));
    return h;
}

class RandomStream {
public:
    explicit RandomStream(std::uint64_t key) : key_(key) {}

    std::uint64_t next_u64() { return mix64(key_ ^ mix64(counter_++)); }

    /// Uniform on the open interval (0,1); never returns an endpoint.
    double next_uniform() {
        const std::uint64_t bits = next_u64() >> 11;  // 53 bits
        return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
    }

    double next_gaussian() { return std_normal_inv(next_uniform()); }

    double next_exponential() { return -std::log(next_uniform()); }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace rainfield
