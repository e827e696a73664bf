#pragma once

#include <cstdint>

namespace txml {

// SplitMix64: tiny, fully portable generator, so a (layout, seed) pair fixes
// every initial weight bit-exactly on any platform.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // 53-bit uniform in [0, 1).
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform in [-r, r].
    double symmetric(double r) { return r * (2.0 * uniform01() - 1.0); }

private:
    std::uint64_t state_;
};

}  // namespace txml
