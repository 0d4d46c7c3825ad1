#pragma once

#include <array>
#include <bit>
#include <cstdint>

namespace thzsim {

/// splitmix64 finalizer; a bijective 64-bit mix.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Collapses a (seed, stream index) pair into one substream seed. Distinct
/// indices under the same seed give decorrelated generators, so blocks and
/// sweep points can each own an independent reproducible stream.
constexpr std::uint64_t derive_substream_seed(std::uint64_t seed, std::uint64_t stream) {
    const std::uint64_t a = mix64(seed + 0x9E3779B97F4A7C15ULL);
    return mix64(a ^ (stream + 0xD1B54A32D192ED03ULL));
}

/// xoshiro256++ seeded from a (seed, stream) pair through splitmix64 state
/// expansion. Integer arithmetic only, so every substream produces the same
/// byte sequence on every platform and at any worker count.
class SubstreamRng {
public:
    SubstreamRng(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t sm = derive_substream_seed(seed, stream);
        for (auto& word : state_) {
            sm += 0x9E3779B97F4A7C15ULL;
            word = mix64(sm);
        }
        if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0)
            state_[0] = 0x9E3779B97F4A7C15ULL;  // all-zero is the one forbidden state
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = std::rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = std::rotl(state_[3], 45);
        return result;
    }

    /// Uniform double in (0, 1]; 53-bit resolution, never 0 so it is safe
    /// under log().
    double uniform01() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    /// Test hook: run the core generator from explicit state words.
    static SubstreamRng from_state(const std::array<std::uint64_t, 4>& s) {
        SubstreamRng rng(0, 0);
        rng.state_ = s;
        return rng;
    }

private:
    std::array<std::uint64_t, 4> state_;
};

}  // namespace thzsim
