#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace wpaoi {

// xoshiro256++ with splitmix64 state expansion. Self-contained so that a
// given seed produces the identical stream on every platform and toolchain,
// which the replication contract depends on.
class rng_stream {
public:
    explicit rng_stream(std::uint64_t seed)
    {
        std::uint64_t s = seed;
        for (auto& w : state_)
            w = splitmix64(s);
    }

    // Documented split rule: replication streams derive from the root seed
    // and the replication index through a 64-bit mix.
    static rng_stream split(std::uint64_t root_seed, std::uint64_t index)
    {
        std::uint64_t s = root_seed;
        const std::uint64_t mixed = splitmix64(s) ^ (0x9E3779B97F4A7C15ULL * (index + 1));
        return rng_stream(mixed);
    }

    std::uint64_t next_u64()
    {
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

    // Uniform on [0, 1) with 53 random bits.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Exp(1); -log(1-U) keeps the argument in (0, 1].
    double next_exp() { return -std::log(1.0 - next_unit()); }

    bool bernoulli(double p) { return next_unit() < p; }

    // Geometric on {1, 2, ...} with success probability p.
    std::uint64_t geometric(double p)
    {
        if (p >= 1.0)
            return 1;
        const double u = 1.0 - next_unit(); // in (0, 1]
        return 1 + static_cast<std::uint64_t>(std::floor(std::log(u) / std::log1p(-p)));
    }

    // Poisson via inverted product of uniforms, chunked so the threshold
    // never underflows. O(mean) like the per-slot accumulation it replaces,
    // but without a log per draw.
    std::uint64_t poisson(double mean)
    {
        std::uint64_t n = 0;
        while (mean > 0.0) {
            const double chunk = mean > 500.0 ? 500.0 : mean;
            mean -= chunk;
            const double limit = std::exp(-chunk);
            double prod = 1.0 - next_unit();
            while (prod >= limit) {
                ++n;
                prod *= 1.0 - next_unit();
            }
        }
        return n;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    static std::uint64_t splitmix64(std::uint64_t& s)
    {
        s += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::array<std::uint64_t, 4> state_{};
};

} // namespace wpaoi
