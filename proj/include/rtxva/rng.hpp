#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace rtxva {

// SplitMix64; used only to expand seeds into generator state.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
};

// xoshiro256++ with explicit bit-level sampling helpers. The standard library
// distributions are implementation-defined, so everything that touches path
// statistics goes through this class to keep runs reproducible across
// platforms and thread counts.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        SplitMix64 sm(seed);
        for (auto& w : s_) w = sm.next();
        if (s_[0] == 0 && s_[1] == 0 && s_[2] == 0 && s_[3] == 0) s_[0] = 1;
    }

    // Decorrelated per-path stream: hash(base_seed, path_index, stream).
    static Rng for_path(std::uint64_t base_seed, std::uint64_t path_index, std::uint64_t stream) {
        SplitMix64 sm(base_seed);
        std::uint64_t a = sm.next();
        std::uint64_t b = sm.next();
        return Rng(a ^ (path_index + 0x9e3779b97f4a7c15ULL) * 0xff51afd7ed558ccdULL
                     ^ (b + stream) * 0xc4ceb9fe1a85ec53ULL);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform on (0, 1), both ends excluded; keeps log() finite and
    // exponential holding times strictly positive.
    double uniform_pos() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

    // Uniform on [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double exponential(double rate) { return -std::log(uniform_pos()) / rate; }

    // Box-Muller, one normal per call (pair partner discarded to keep the
    // draw count per event fixed).
    double normal() {
        const double u1 = uniform_pos();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::array<std::uint64_t, 4> s_;
};

}  // namespace rtxva
