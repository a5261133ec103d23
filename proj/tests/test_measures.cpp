#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "holodyn/errors.hpp"
#include "holodyn/fibers.hpp"
#include "holodyn/measures.hpp"
#include "oracles.hpp"

using namespace holodyn;
using oracle::Cplx;

namespace {

AtomicMeasure roots_measure(int k, double phase = 0.0) {
    std::vector<SphereAtom> atoms;
    for (int j = 0; j < k; ++j) atoms.push_back({SpherePoint::finite(std::polar(1.0, phase + 2.0 * std::numbers::pi * j / k)), 1.0 / k});
    return AtomicMeasure(std::move(atoms));
}

AtomicMeasure random_measure(std::mt19937_64& gen, int k) {
    std::vector<SphereAtom> atoms;
    for (int j = 0; j < k; ++j) atoms.push_back({SpherePoint::finite(oracle::random_point(gen, 2.0)), 1.0 / k});
    return AtomicMeasure(std::move(atoms));
}

}  // namespace

TEST_CASE("binned total variation examples") {
    const ReferenceMeasure circle = ReferenceMeasure::circle_haar();
    CHECK(binned_tv(roots_measure(8), circle, 8) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(binned_tv(AtomicMeasure::dirac(SpherePoint::finite(1.0)), circle, 8) == doctest::Approx(0.875));

    const AtomicMeasure mu = roots_measure(13, 0.2);
    CHECK(binned_tv(mu, mu, 8) < 1e-12);

    // atoms far from the support land in the off-support bin
    CHECK(binned_tv(AtomicMeasure::dirac(SpherePoint::finite(3.0)), circle, 8) == doctest::Approx(1.0));
    CHECK_THROWS_AS(binned_tv(mu, ReferenceMeasure::torus_haar(), 8), Error);
}

TEST_CASE("binned total variation against arcsine matches a direct bin count") {
    const ReferenceMeasure arc = ReferenceMeasure::arcsine();
    std::mt19937_64 gen(8);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::vector<SphereAtom> atoms;
    for (int k = 0; k < 400; ++k) atoms.push_back({SpherePoint::finite(u(gen)), 1.0 / 400});
    const AtomicMeasure mu(atoms);
    // quantile bins of the arcsine law: x_k = -2 cos(pi k / B)
    const int B = 16;
    std::vector<double> mass(B, 0.0);
    for (const auto& a : atoms) {
        const double t = std::acos(-a.point.affine().real() / 2.0) / std::numbers::pi;
        mass[std::min(B - 1, static_cast<int>(t * B))] += a.weight;
    }
    double tv = 0.0;
    for (double m : mass) tv += std::abs(m - 1.0 / B);
    CHECK(binned_tv(mu, arc, B) == doctest::Approx(tv / 2.0).epsilon(1e-9));
}

TEST_CASE("binned total variation is symmetric and shrinks with equidistributed samples") {
    std::mt19937_64 gen(2);
    for (int k = 0; k < 20; ++k) {
        const AtomicMeasure a = random_measure(gen, 30), b = random_measure(gen, 40);
        CHECK(binned_tv(a, b, 6) == doctest::Approx(binned_tv(b, a, 6)).epsilon(1e-12));
    }
    const ReferenceMeasure circle = ReferenceMeasure::circle_haar();
    double previous = 1.0;
    for (int j = 3; j <= 12; ++j) {
        const double tv = binned_tv(reference_atoms(circle, 1 << j), circle, 32);
        CHECK(tv <= previous + 1e-12);
        previous = tv;
    }
}

TEST_CASE("Kolmogorov-Smirnov distance") {
    const ReferenceMeasure arc = ReferenceMeasure::arcsine();
    for (int N : {10, 100, 1000}) {
        CHECK(ks_distance(reference_atoms(arc, N), arc) <= 0.5 / N + 1e-12);
        CHECK(ks_distance(reference_atoms(ReferenceMeasure::circle_haar(), N), ReferenceMeasure::circle_haar()) <= 1.0 / N + 1e-12);
    }
    CHECK(ks_distance(AtomicMeasure::dirac(SpherePoint::finite(0.0)), arc) == doctest::Approx(0.5));
    CHECK_THROWS_AS(ks_distance(AtomicMeasure::dirac(SpherePoint::finite(Cplx(0.0, 1.0))), arc), Error);
    CHECK_THROWS_AS(ks_distance(AtomicMeasure::dirac(SpherePoint::finite(0.0)), ReferenceMeasure::torus_haar()), Error);
}

TEST_CASE("Lipschitz test-function gap") {
    std::mt19937_64 gen(6);
    const AtomicMeasure a = random_measure(gen, 20);
    CHECK(lipschitz_gap(a, a, 1, 64) < 1e-12);

    for (int k = 0; k < 20; ++k) {
        const Cplx x = oracle::random_point(gen, 2.0), y = oracle::random_point(gen, 2.0);
        const double gap = lipschitz_gap(AtomicMeasure::dirac(SpherePoint::finite(x)), AtomicMeasure::dirac(SpherePoint::finite(y)), 3, 500);
        CHECK(gap <= oracle::chordal(x, y) + 1e-12);
        CHECK(gap >= 0.5 * oracle::chordal(x, y));
    }

    for (int k = 0; k < 20; ++k) {
        const AtomicMeasure p = random_measure(gen, 10), q = random_measure(gen, 12), r = random_measure(gen, 7);
        CHECK(lipschitz_gap(p, q, 4, 64) == doctest::Approx(lipschitz_gap(q, p, 4, 64)).epsilon(1e-12));
        CHECK(lipschitz_gap(p, r, 4, 64) <= lipschitz_gap(p, q, 4, 64) + lipschitz_gap(q, r, 4, 64) + 1e-12);
    }

    const SphereMap f = SphereMap::chebyshev();
    const SpherePoint start = SpherePoint::finite(0.3);
    CHECK(lipschitz_gap(pullback_measure(f, start, 10), pullback_measure(f, start, 11), 1, 64) < 0.05);

    CHECK_THROWS_AS(lipschitz_gap(a, AtomicMeasure::dirac(TorusPoint(0.0, 0.0)), 1, 8), Error);
}

TEST_CASE("torus Haar comparisons") {
    const ReferenceMeasure haar = ReferenceMeasure::torus_haar();
    CHECK(binned_tv(reference_atoms(haar, 32), haar, 16) < 1e-12);
    CHECK(binned_tv(AtomicMeasure::dirac(TorusPoint(0.1, 0.1)), haar, 4) == doctest::Approx(15.0 / 16.0));

    // equal masses in every cell give zero
    std::vector<double> flat(16 * 16, 1.0 / 256);
    CHECK(binned_tv_torus_histogram(flat, 16) < 1e-12);
}

TEST_CASE("backward orbits approach the reference") {
    const SphereMap sq = SphereMap::power(2);
    const AtomicMeasure mu = pullback_measure(sq, SpherePoint::finite(Cplx(1.0, 0.3)), 10);
    const MeasureDistanceReport r = compare(mu, ReferenceMeasure::circle_haar(), 32, 1);
    REQUIRE(r.ks_1d);
    CHECK(*r.ks_1d < 0.01);
    CHECK(r.binned_tv < 0.02);
    CHECK(r.lipschitz_gap < 0.02);
    CHECK(r.bins == 32);
}
