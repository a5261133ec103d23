#pragma once

#include <cstdint>
#include <functional>
#include <string_view>
#include <variant>
#include <vector>

#include "holodyn/atomic_measure.hpp"
#include "holodyn/branches.hpp"
#include "holodyn/core.hpp"
#include "holodyn/torus.hpp"

namespace holodyn {

enum class Classification { Repelling, Attracting, Indifferent, Superattracting };
std::string_view to_string(Classification c);

inline constexpr double kClassificationTolerance = 1e-6;
inline constexpr double kSuperattractingTolerance = 1e-9;

// Classification from the eigenvalues of the differential of f^n.
Classification classify(const std::vector<Cplx>& eigenvalues);

struct PeriodicPoint {
    std::variant<SpherePoint, TorusPoint> point;
    int period = 1;
    int multiplicity = 1;
    std::vector<Cplx> multipliers;
    Classification classification = Classification::Repelling;
    bool on_support = false;

    double min_modulus() const;
    const SpherePoint& sphere() const { return std::get<SpherePoint>(point); }
    const TorusPoint& torus() const { return std::get<TorusPoint>(point); }
};

struct PeriodicOptions {
    std::int64_t degree_budget = 5000;  // d^n + 1
    bool test_support = true;
    double support_radius = 0.02;
    int support_samples = 10000;
    int support_burn_in = 100;
    std::uint64_t seed = 1;
};

// All fixed points of f^n with multiplicity, classified.
std::vector<PeriodicPoint> periodic_algebraic(const SphereMap& f, int n, const PeriodicOptions& options = {});

// Repelling period-n points found as attracting fixed points of the inverse
// branches of f^n that map a disc compactly into itself.
std::vector<PeriodicPoint> periodic_via_branches(const SphereMap& f, int n, const std::vector<Disc>& balls,
                                                 std::uint64_t seed, const BranchOptions& options = {});

struct TorusPeriodicResult {
    std::int64_t count = 0;
    bool enumerated = false;  // points filled in (count within the budget)
    Classification classification = Classification::Repelling;
    std::vector<Cplx> multipliers;
    std::vector<PeriodicPoint> points;
};

TorusPeriodicResult periodic_torus(const TorusMap& f, int n, std::int64_t point_budget = 1'000'000);

// Streams every solution of (A^n - I) theta = 0 (mod 2 pi) as exact
// fractions u = theta / 2 pi = (num1, num2) / den, without storing them.
void for_each_torus_periodic(const TorusMap& f, int n,
                             const std::function<void(std::int64_t num1, std::int64_t num2, std::int64_t den)>& visit);

// B x B histogram of the period-n points (cell (i, j) at index i * B + j),
// each point weighted 1 / |det A|^n.
std::vector<double> torus_periodic_histogram(const TorusMap& f, int n, int bins);

enum class PeriodicFilter { All, Repelling, RepellingOnSupport };

// Atoms weighted multiplicity / normalizer (filter All) or 1 / normalizer.
AtomicMeasure periodic_measure(const std::vector<PeriodicPoint>& points, PeriodicFilter filter, double normalizer);

}  // namespace holodyn
