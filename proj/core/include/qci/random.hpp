#pragma once

#include <cstdint>
#include <vector>

namespace qci {

// SplitMix64 avalanche (Vigna's fixed-increment SplittableRandom variant).
constexpr std::uint64_t avalanche64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Strong 64-bit mix of two words; used for deriving substream seeds.
constexpr std::uint64_t mix64(std::uint64_t a, std::uint64_t b) noexcept {
    std::uint64_t h = avalanche64(a + 0x9E3779B97F4A7C15ull);
    h ^= b + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    return avalanche64(h);
}

// FNV-1a, for keying substreams by label rather than by list position.
constexpr std::uint64_t fnv1a64(const char* data, std::size_t len) noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= static_cast<unsigned char>(data[i]);
        h *= 1099511628211ull;
    }
    return h;
}

// Identifies one reproducible random stream. Identical (master_seed,
// stream_id) pairs produce identical draws on every platform; streams with
// distinct ids are statistically independent. Cheap to copy; a single
// instance must not be shared mutably across threads (it is immutable, so
// sharing by value is the intended pattern).
struct RandomSource {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_id = 0;

    constexpr RandomSource substream(std::uint64_t id) const noexcept {
        return RandomSource{master_seed, mix64(stream_id, id)};
    }

    friend constexpr bool operator==(const RandomSource&,
                                     const RandomSource&) = default;
};

// xoshiro256++ seeded through SplitMix64 from the mixed (seed, stream) pair.
// Pure integer arithmetic, so the byte stream is platform independent.
class RandomEngine {
public:
    explicit RandomEngine(const RandomSource& src) noexcept {
        std::uint64_t sm = mix64(src.master_seed, src.stream_id);
        for (auto& word : state_) {
            sm += 0x9E3779B97F4A7C15ull;
            word = avalanche64(sm);
        }
    }

    std::uint64_t next_u64() noexcept {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform draw in the open interval (0,1); exact endpoint values are
    // rejected so downstream log() transforms stay finite.
    double next_open_unit() noexcept {
        for (;;) {
            double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
            if (u > 0.0) return u;
        }
    }

    bool bernoulli(double prob_true) noexcept {
        return next_open_unit() < prob_true;
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
};

// Deterministic sequence of `count` i.i.d.-quality uniforms in (0,1).
std::vector<double> uniform_stream(const RandomSource& src, std::size_t count);

}  // namespace qci
