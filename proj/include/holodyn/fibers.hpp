#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "holodyn/atomic_measure.hpp"
#include "holodyn/core.hpp"
#include "holodyn/torus.hpp"

namespace holodyn {

template <class Point>
struct FiberPoint {
    Point point;
    int multiplicity;
};

using SphereFiberPoint = FiberPoint<SpherePoint>;
using TorusFiberPoint = FiberPoint<TorusPoint>;

inline constexpr double kFiberClusterRadius = 1e-6;
inline constexpr std::size_t kDefaultAtomBudget = 1'000'000;

// The d preimages of a, repeated by multiplicity, unclustered.
std::vector<SpherePoint> fiber_roots(const SphereMap& f, const SpherePoint& a);

// f^{-1}(a) with multiplicities summing to deg f.
std::vector<SphereFiberPoint> fiber_sphere(const SphereMap& f, const SpherePoint& a);

// The |det A| solutions of A theta = a (mod 2 pi).
std::vector<TorusFiberPoint> fiber_torus(const TorusMap& f, const TorusPoint& a);

// d_t^{-n} (f^n)^* delta_a, built by n successive fiber computations.
AtomicMeasure pullback_measure(const SphereMap& f, const SpherePoint& a, int n,
                               std::size_t atom_budget = kDefaultAtomBudget);
AtomicMeasure pullback_measure(const TorusMap& f, const TorusPoint& a, int n,
                               std::size_t atom_budget = kDefaultAtomBudget);

// Random backward orbit: one preimage per step, chosen with probability
// proportional to multiplicity; the first burn_in points are discarded.
AtomicMeasure sample_equilibrium(const SphereMap& f, const SpherePoint& a, int burn_in, int count,
                                 std::uint64_t seed);
AtomicMeasure sample_equilibrium(const TorusMap& f, const TorusPoint& a, int burn_in, int count,
                                 std::uint64_t seed);

}  // namespace holodyn
