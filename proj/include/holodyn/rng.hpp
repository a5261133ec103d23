#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace holodyn {

// Seeded generator whose derived draws are identical on every platform
// (mt19937_64 is fully specified; the distributions here are hand-rolled).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    // Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    // Uniform in [0, n).
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }

private:
    std::mt19937_64 engine_;
};

}  // namespace holodyn
