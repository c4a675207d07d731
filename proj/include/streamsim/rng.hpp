#pragma once

#include <cstdint>

namespace streamsim {

// SplitMix64 output function (Steele, Lea, Flood 2014). Fixed here as the
// project's portable generator: same (seed, counter) gives the same draw on
// every platform, and random access by counter needs no generator state.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// n-th draw of the stream identified by seed.
inline std::uint64_t counter_draw(std::uint64_t seed, std::uint64_t n) {
    return splitmix64(splitmix64(seed) + n * 0x9e3779b97f4a7c15ULL);
}

// Top 53 bits, offset to the open interval (0,1). Never returns 0 or 1,
// so -log(u) stays finite.
inline double bits_to_unit_open(std::uint64_t bits) {
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace streamsim
