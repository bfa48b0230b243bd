#pragma once

#include <cstdint>
#include <random>

namespace psram {

// Portable seeded stream: mt19937_64 is fully specified by the standard, the
// distributions are not, so doubles are formed from the raw bits here.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // [0, 1)
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    // [lo, hi)
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace psram
