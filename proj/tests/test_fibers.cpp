#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "holodyn/errors.hpp"
#include "holodyn/fibers.hpp"
#include "oracles.hpp"

using namespace holodyn;
using oracle::Cplx;

TEST_CASE("sphere fibers") {
    const SphereMap sq = SphereMap::power(2);
    const auto ones = fiber_sphere(sq, SpherePoint::finite(1.0));
    REQUIRE(ones.size() == 2);
    CHECK(oracle::all_near({ones[0].point, ones[1].point}, {1.0, -1.0}, 1e-12));
    CHECK(ones[0].multiplicity == 1);
    CHECK(ones[1].multiplicity == 1);

    const auto zero = fiber_sphere(sq, SpherePoint::finite(0.0));
    REQUIRE(zero.size() == 1);
    CHECK(zero[0].multiplicity == 2);
    CHECK(std::abs(zero[0].point.affine()) < 1e-12);

    const auto twos = fiber_sphere(SphereMap::chebyshev(), SpherePoint::finite(2.0));
    REQUIRE(twos.size() == 2);
    CHECK(oracle::all_near({twos[0].point, twos[1].point}, {2.0, -2.0}, 1e-12));
}

TEST_CASE("fiber round trip for a generic rational map") {
    const SphereMap f = SphereMap::from_coefficients({Cplx(1.0), Cplx(0.3, 0.1), Cplx(0.0), Cplx(2.0)},
                                                     {Cplx(0.5), Cplx(-1.0), Cplx(0.2, 0.7), Cplx(0.1)});
    std::mt19937_64 gen(9);
    for (int k = 0; k < 50; ++k) {
        const SpherePoint a = SpherePoint::finite(oracle::random_point(gen, 3.0));
        int total = 0;
        for (const auto& b : fiber_sphere(f, a)) {
            CHECK(chordal_distance(eval_sphere(f, b.point), a) < 1e-8);
            total += b.multiplicity;
        }
        CHECK(total == 3);
    }
}

TEST_CASE("torus fibers") {
    const double pi = std::numbers::pi;
    const auto halves = fiber_torus(TorusMap(IntMatrix2{2, 0, 0, 2}), TorusPoint(0.0, 0.0));
    REQUIRE(halves.size() == 4);
    std::vector<std::pair<double, double>> got;
    for (const auto& h : halves) got.emplace_back(h.point.theta1, h.point.theta2);
    std::sort(got.begin(), got.end());
    const std::vector<std::pair<double, double>> want{{0, 0}, {0, pi}, {pi, 0}, {pi, pi}};
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(got[i].first == doctest::Approx(want[i].first));
        CHECK(got[i].second == doctest::Approx(want[i].second));
    }

    const TorusMap A(IntMatrix2{3, 1, 1, 2});
    const auto five = fiber_torus(A, TorusPoint(0.0, 0.0));
    CHECK(five.size() == 5);
    for (std::size_t i = 0; i < five.size(); ++i) {
        CHECK(torus_distance(eval_torus(A, five[i].point), TorusPoint(0.0, 0.0)) < 1e-8);
        for (std::size_t j = i + 1; j < five.size(); ++j) CHECK(torus_distance(five[i].point, five[j].point) > 0.1);
    }

    const auto id = fiber_torus(TorusMap(IntMatrix2{1, 0, 0, 1}), TorusPoint(1.0, 2.0));
    REQUIRE(id.size() == 1);
    CHECK(id[0].point.theta1 == doctest::Approx(1.0));
    CHECK(id[0].point.theta2 == doctest::Approx(2.0));
}

TEST_CASE("torus fiber round trip for random matrices") {
    std::mt19937_64 gen(4);
    std::uniform_int_distribution<std::int64_t> e(-4, 4);
    std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
    int tested = 0;
    while (tested < 50) {
        const IntMatrix2 m{e(gen), e(gen), e(gen), e(gen)};
        if (m.det() == 0) continue;
        ++tested;
        const TorusMap f(m);
        const TorusPoint a(u(gen), u(gen));
        const auto fib = fiber_torus(f, a);
        CHECK(static_cast<std::int64_t>(fib.size()) == std::llabs(m.det()));
        for (const auto& b : fib) CHECK(torus_distance(eval_torus(f, b.point), a) < 1e-8);
    }
}

TEST_CASE("pullback measures") {
    const SphereMap sq = SphereMap::power(2);
    const AtomicMeasure delta = pullback_measure(sq, SpherePoint::finite(0.4), 0);
    REQUIRE(delta.size() == 1);
    CHECK(delta.total_mass() == 1.0);

    const AtomicMeasure eighth = pullback_measure(sq, SpherePoint::finite(1.0), 3);
    REQUIRE(eighth.size() == 8);
    std::vector<SpherePoint> pts;
    for (const auto& a : eighth.sphere_atoms()) {
        CHECK(a.weight == doctest::Approx(0.125));
        pts.push_back(a.point);
    }
    CHECK(oracle::all_near(pts, oracle::roots_of_unity(8), 1e-12));

    const AtomicMeasure zero = pullback_measure(sq, SpherePoint::finite(0.0), 2);
    REQUIRE(zero.size() == 1);
    CHECK(zero.sphere_atoms()[0].weight == doctest::Approx(1.0));

    CHECK_THROWS_AS(pullback_measure(sq, SpherePoint::finite(0.3), 12, 100), Error);
}

TEST_CASE("pullback mass and refinement") {
    const SphereMap f = SphereMap::quadratic(Cplx(-0.12, 0.75));
    const SpherePoint a = SpherePoint::finite(Cplx(0.3, -0.2));
    for (int n = 0; n <= 8; ++n) CHECK(pullback_measure(f, a, n).total_mass() == doctest::Approx(1.0).epsilon(1e-12));

    // level n+1 is the union of the fibers of the level-n atoms, weights halved
    const AtomicMeasure mu5 = pullback_measure(f, a, 5), mu6 = pullback_measure(f, a, 6);
    std::vector<SphereAtom> rebuilt;
    for (const SphereAtom& x : mu5.sphere_atoms()) {
        for (const SpherePoint& b : fiber_roots(f, x.point)) rebuilt.push_back({b, x.weight / 2.0});
    }
    REQUIRE(rebuilt.size() == mu6.size());
    for (const SphereAtom& x : rebuilt) {
        const bool found = std::any_of(mu6.sphere_atoms().begin(), mu6.sphere_atoms().end(), [&](const SphereAtom& y) {
            return chordal_distance(x.point, y.point) < 1e-7 && std::abs(x.weight - y.weight) < 1e-12;
        });
        CHECK(found);
    }

    const TorusMap A(IntMatrix2{3, 1, 1, 2});
    for (int n = 0; n <= 5; ++n) {
        const AtomicMeasure nu = pullback_measure(A, TorusPoint(0.5, 1.1), n);
        CHECK(nu.size() == static_cast<std::size_t>(std::pow(5, n)));
        CHECK(nu.total_mass() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("equilibrium sampling") {
    const SphereMap sq = SphereMap::power(2);
    const AtomicMeasure mu = sample_equilibrium(sq, SpherePoint::finite(Cplx(1.0, 0.3)), 50, 2000, 17);
    CHECK(mu.total_mass() == doctest::Approx(1.0));
    for (const auto& a : mu.sphere_atoms()) CHECK(std::abs(std::abs(a.point.affine()) - 1.0) < 1e-6);

    const AtomicMeasure again = sample_equilibrium(sq, SpherePoint::finite(Cplx(1.0, 0.3)), 50, 2000, 17);
    REQUIRE(again.size() == mu.size());
    for (std::size_t i = 0; i < mu.size(); ++i) CHECK(again.sphere_atoms()[i].point == mu.sphere_atoms()[i].point);

    CHECK_THROWS_AS(sample_equilibrium(sq, SpherePoint::finite(0.5), 10, 0, 1), Error);
    CHECK_THROWS_AS(sample_equilibrium(sq, SpherePoint::finite(0.0), 10, 10, 1), Error);
    CHECK_THROWS_AS(sample_equilibrium(TorusMap(IntMatrix2{2, 1, 1, 1}), TorusPoint(0.1, 0.2), 10, 10, 1), Error);
}
