#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "holodyn/atomic_measure.hpp"

namespace holodyn {

// Closed-form equilibrium measures of the oracle families, or an atomic
// stand-in.
struct ReferenceMeasure {
    enum class Kind { CircleHaar, TorusHaar, ArcsineInterval, Sampled };

    Kind kind = Kind::CircleHaar;
    double lower = -2.0, upper = 2.0;  // arcsine endpoints
    AtomicMeasure sample;              // for Kind::Sampled

    static ReferenceMeasure circle_haar() { return {Kind::CircleHaar, -2.0, 2.0, {}}; }
    static ReferenceMeasure torus_haar() { return {Kind::TorusHaar, -2.0, 2.0, {}}; }
    static ReferenceMeasure arcsine(double a = -2.0, double b = 2.0);
    static ReferenceMeasure sampled(AtomicMeasure mu) { return {Kind::Sampled, -2.0, 2.0, std::move(mu)}; }

    Space space() const;
};

std::string to_string(ReferenceMeasure::Kind kind);

inline constexpr double kProjectionTolerance = 0.05;

// Half the l1 distance between bin masses.  Circle: angle bins centred on
// 2 pi k / B; interval: arcsine-quantile bins; torus: uniform B x B grid;
// sphere against sphere: B equal-area height bands x B longitudes.  Sphere
// atoms farther than the projection tolerance from a one-dimensional
// support land in an extra bin that carries no reference mass.
double binned_tv(const AtomicMeasure& mu, const ReferenceMeasure& ref, int bins_per_axis);
double binned_tv(const AtomicMeasure& mu, const AtomicMeasure& nu, int bins_per_axis);

// Total variation of a B x B torus histogram (index i * B + j) against Haar.
double binned_tv_torus_histogram(std::span<const double> masses, int bins_per_axis);

// Sup distance between CDFs (interval), or the rotation-minimised version
// (circle).  The atomic measure is normalised to mass 1 first.
double ks_distance(const AtomicMeasure& mu, const ReferenceMeasure& ref);

// max over `count` functions x -> dist(x, y_i), y_i uniform random, of
// |int phi dmu - int phi dnu|.
double lipschitz_gap(const AtomicMeasure& mu, const AtomicMeasure& nu, std::uint64_t seed, int count);

// N-atom quantile discretization of a closed-form reference (N^2 atoms on
// the torus).
AtomicMeasure reference_atoms(const ReferenceMeasure& ref, int n);

struct MeasureDistanceReport {
    double binned_tv = 0.0;
    std::optional<double> ks_1d;
    double lipschitz_gap = 0.0;
    int bins = 0;
    int test_function_count = 0;
};

MeasureDistanceReport compare(const AtomicMeasure& mu, const ReferenceMeasure& ref, int bins, std::uint64_t seed,
                              int test_functions = 64);

}  // namespace holodyn
