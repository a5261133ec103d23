#pragma once

// Inverse branches of f^n on a disc, by continuation of the disc boundary
// through successive fibers.

#include <cstdint>
#include <string_view>
#include <vector>

#include "holodyn/core.hpp"

namespace holodyn {

struct ObstructionPoint {
    SpherePoint point;
    int depth;  // smallest j >= 1 with point = f^j(critical point)
};

struct ObstructionSet {
    std::vector<SpherePoint> critical_points;
    std::vector<ObstructionPoint> points;  // forward critical orbit, merged
    int depth = 0;
};

// Critical points (roots of the Jacobian p0 q1 - p1 q0) and their images
// f^j(c), j = 1..depth.
ObstructionSet critical_orbit(const SphereMap& f, int depth);

// A Euclidean disc in the affine chart, or in the chart at infinity when the
// center is beyond kFarCenter.
struct Disc {
    SpherePoint center;
    double radius;
};

enum class BranchStatus { Alive, Collided, NearCritical, NearIndeterminate };
std::string_view to_string(BranchStatus status);

struct BranchRecord {
    int order = 0;         // depth the branch reached
    int target_order = 0;  // requested n
    int map_degree = 1;
    SpherePoint anchor;    // image of the disc center under the branch
    std::vector<SpherePoint> chain;              // anchors at depths 0..order
    std::vector<SpherePoint> boundary_samples;   // image of the disc boundary
    std::vector<double> diameters;               // chordal diameter at depths 0..order
    BranchStatus status = BranchStatus::Alive;
    // Leaves of the full fiber tree that this record stands for: 1 for a
    // branch that reached the target order, d^(n - order) for a dead subtree.
    std::int64_t leaf_weight = 1;
};

struct BranchOptions {
    int boundary_samples = 128;
    double kill_radius = 1e-5;
    double ambiguity_ratio = 0.25;  // nearest / second-nearest above this triggers subdivision
    int max_subdivisions = 20;
};

std::vector<BranchRecord> track_branches(const SphereMap& f, const Disc& disc, int n, std::uint64_t seed,
                                         const BranchOptions& options = {});

struct BranchStatistics {
    double survival_fraction;
    double size_bound_fraction;
    std::int64_t alive;
    std::int64_t total;
    double max_diameter;  // over alive branches, at the final order
    double bound;         // (1/d + epsilon)^(n/2)
};

BranchStatistics branch_statistics(const std::vector<BranchRecord>& records, double epsilon);

// Whether x lies in the disc (closed, with a relative margin).
bool disc_contains(const Disc& disc, const SpherePoint& x, double margin = 0.0);

}  // namespace holodyn
