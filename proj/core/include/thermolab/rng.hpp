#pragma once

#include <cstdint>
#include <random>

namespace thermolab {

// SplitMix64 step (Steele, Lea, Flood 2014). Used only to key per-realization
// mt19937_64 streams from (master seed, realization index) so that disorder
// draws are independent of worker count and iteration order.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t index) {
    std::uint64_t s = master_seed;
    std::uint64_t a = splitmix64(s);
    s ^= index * 0x9e3779b97f4a7c15ULL;
    std::uint64_t b = splitmix64(s);
    return a ^ (b + 0x632be59bd9b4e019ULL);
}

// Uniform double in [0,1) from the top 53 bits; bit-identical across
// platforms, unlike std::uniform_real_distribution.
inline double uniform01(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// Uniform double on [-w, w].
inline double uniform_symmetric(std::mt19937_64& gen, double w) {
    return w * (2.0 * uniform01(gen) - 1.0);
}

}  // namespace thermolab
