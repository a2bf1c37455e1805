#ifndef NETGA_RNG_HPP
#define NETGA_RNG_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace netga {

/// splitmix64 finalizer; bijective on 64-bit values.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

/// Derives a child seed from a base seed and a stream id. Injective in
/// `stream_id` for a fixed base, so named sub-streams (graph generation,
/// population init, evolution, sweep cells) never alias each other.
/// Chain calls to derive deeper streams: derive_seed(derive_seed(s, a), b).
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream_id) {
    return mix64(base ^ (0x9e3779b97f4a7c15ULL * (stream_id + 1)));
}

/// Deterministic random stream (xoshiro256** scrambled-linear generator,
/// seeded via splitmix64 expansion). All distributions are produced from raw
/// 64-bit draws with fixed arithmetic, so sequences are identical across
/// platforms and compilers for a given seed.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) {
        std::uint64_t s = seed;
        for (auto& word : state_) {
            s += 0x9e3779b97f4a7c15ULL;
            word = mix64(s);
        }
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] ^= rotl(state_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1), 53-bit resolution.
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double next_uniform(double lo, double hi) {
        return lo + (hi - lo) * next_unit();
    }

    /// Unbiased uniform integer in [0, bound); bound must be nonzero.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    /// Standard normal draw (Box-Muller; the paired value is cached).
    double next_gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = next_unit();
        while (u1 == 0.0) u1 = next_unit();
        const double u2 = next_unit();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> state_{};
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace netga

#endif
