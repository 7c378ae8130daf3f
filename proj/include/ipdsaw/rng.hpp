// Counter-based generator: output i is a pure function of (seed, stream, i),
// so distinct streams are independent and replay never depends on call order.
#pragma once

#include <cstdint>

namespace ipdsaw {

struct CounterRng {
    std::uint64_t key;
    std::uint64_t counter = 0;

    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
        : key(mix(seed ^ mix(stream + 0x9e3779b97f4a7c15ULL))) {}

    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t next_u64() { return mix(key + 0x632be59bd9b4e019ULL * ++counter); }

    // Uniform in [0, 1) with 53 random bits.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
};

} // namespace ipdsaw
