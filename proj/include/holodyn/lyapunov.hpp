#pragma once

#include <cstddef>

#include "holodyn/atomic_measure.hpp"
#include "holodyn/core.hpp"
#include "holodyn/torus.hpp"

namespace holodyn {

struct LyapunovEstimate {
    double chi = 0.0;             // smallest exponent
    double standard_error = 0.0;  // zero for exact values
    std::size_t sample_count = 0;
    std::size_t skipped = 0;      // atoms dropped next to critical points
    double floor = 0.0;           // (1/2) log(d_t / d_{k-1})
    bool floor_satisfied = false; // chi >= floor - 2 standard_error
};

inline constexpr std::size_t kMinLyapunovSamples = 1000;

// Weighted mean of log |Df| in the spherical metric over the samples.
LyapunovEstimate estimate_sphere(const SphereMap& f, const AtomicMeasure& samples);

// log of the smaller eigenvalue modulus of A, exactly.
LyapunovEstimate estimate_torus(const TorusMap& f);

}  // namespace holodyn
