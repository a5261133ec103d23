#pragma once

#include <cstdint>
#include <vector>

#include "holodyn/core.hpp"

namespace holodyn {

inline constexpr double kMembershipTolerance = 1e-7;

struct ExceptionalSet {
    std::vector<SpherePoint> points;
    int verified_depth = 0;  // backward depth over which total invariance was re-checked

    bool contains(const SpherePoint& x, double tolerance = kMembershipTolerance) const;
};

// Maximal finite totally invariant set (at most two points on the sphere).
ExceptionalSet find_exceptional(const SphereMap& f);

// Number of depth-n backward chains from a that stay inside Y, counted with
// multiplicity.
std::int64_t lambda_n(const SphereMap& f, const SpherePoint& a, const std::vector<SpherePoint>& Y, int n,
                      std::int64_t atom_budget = 1'000'000);

// True iff f^{-1}(E) is contained in E and f(E) is contained in E.
bool verify_invariance(const SphereMap& f, const ExceptionalSet& E);

}  // namespace holodyn
