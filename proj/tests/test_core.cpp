#include <doctest.h>

#include <random>

#include "holodyn/core.hpp"
#include "holodyn/errors.hpp"
#include "holodyn/torus.hpp"
#include "oracles.hpp"

using namespace holodyn;
using oracle::Cplx;

TEST_CASE("eval_sphere on fixed points of power and Chebyshev maps") {
    const SphereMap sq = SphereMap::power(2);
    CHECK(eval_sphere(sq, SpherePoint(1.0, 1.0)) == SpherePoint(1.0, 1.0));
    CHECK(eval_sphere(sq, SpherePoint(0.0, 1.0)) == SpherePoint(0.0, 1.0));
    CHECK(eval_sphere(sq, SpherePoint::infinity()).is_infinity());

    const SphereMap cheb = SphereMap::chebyshev();
    // z^2 - 2 = z has roots 2 and -1
    CHECK(chordal_distance(eval_sphere(cheb, SpherePoint(2.0, 1.0)), SpherePoint(2.0, 1.0)) < 1e-15);
    CHECK(chordal_distance(eval_sphere(cheb, SpherePoint::finite(-1.0)), SpherePoint::finite(-1.0)) < 1e-15);
}

TEST_CASE("Chebyshev preset homogenizes to z0^2 - 2 z1^2 over z1^2") {
    const SphereMap cheb = SphereMap::chebyshev();
    REQUIRE(cheb.degree() == 2);
    CHECK(cheb.p()[0] == Cplx(-2.0));
    CHECK(cheb.p()[1] == Cplx(0.0));
    CHECK(cheb.p()[2] == Cplx(1.0));
    CHECK(cheb.q()[0] == Cplx(1.0));
    CHECK(cheb.q()[1] == Cplx(0.0));
    CHECK(cheb.q()[2] == Cplx(0.0));
}

TEST_CASE("multiplier by chain rule") {
    const SphereMap cheb = SphereMap::chebyshev();
    CHECK(std::abs(multiplier(cheb, SpherePoint::finite(2.0), 1) - Cplx(4.0)) < 1e-12);
    CHECK(std::abs(multiplier(cheb, SpherePoint::finite(-1.0), 1) - Cplx(-2.0)) < 1e-12);
    CHECK(std::abs(multiplier(SphereMap::power(2), SpherePoint::finite(0.0), 1)) < 1e-15);
    CHECK_THROWS_AS(multiplier(cheb, SpherePoint::finite(0.5), 1), Error);
}

TEST_CASE("multiplier agrees with central differences of the iterate") {
    const SphereMap f = SphereMap::quadratic(Cplx(-0.4, 0.3));
    // periodic points from the polynomial f^n(z) - z, located by Newton from many starts
    for (int n = 1; n <= 4; ++n) {
        std::mt19937_64 gen(n);
        int checked = 0;
        for (int trial = 0; trial < 40 && checked < 3; ++trial) {
            Cplx z = oracle::random_point(gen, 1.5);
            auto fn = [&](Cplx w) {
                for (int i = 0; i < n; ++i) w = w * w + Cplx(-0.4, 0.3);
                return w;
            };
            for (int it = 0; it < 100; ++it) {
                const Cplx h = 1e-7;
                const Cplx g = fn(z) - z;
                const Cplx dg = (fn(z + h) - fn(z - h)) / (2.0 * h) - 1.0;
                z -= g / dg;
            }
            if (std::abs(fn(z) - z) > 1e-12) continue;
            const Cplx h = 1e-6;
            const Cplx numeric = (fn(z + h) - fn(z - h)) / (2.0 * h);
            const Cplx lambda = multiplier(f, SpherePoint::finite(z), n);
            CHECK(std::abs(lambda - numeric) <= 1e-6 * std::max(1.0, std::abs(numeric)));
            ++checked;
        }
        CHECK(checked > 0);
    }
}

TEST_CASE("chordal distance examples and metric properties") {
    const SpherePoint one = SpherePoint::finite(1.0);
    CHECK(chordal_distance(one, one) == 0.0);
    CHECK(chordal_distance(SpherePoint::finite(0.0), SpherePoint::infinity()) == doctest::Approx(1.0));
    // |1*1 - (-1)*1| / (sqrt 2 sqrt 2)
    CHECK(chordal_distance(one, SpherePoint::finite(-1.0)) == doctest::Approx(1.0));

    std::mt19937_64 gen(7);
    for (int k = 0; k < 200; ++k) {
        const Cplx a = oracle::random_point(gen, 3.0), b = oracle::random_point(gen, 3.0), c = oracle::random_point(gen, 3.0);
        const SpherePoint x = SpherePoint::finite(a), y = SpherePoint::finite(b), z = SpherePoint::finite(c);
        CHECK(chordal_distance(x, y) == doctest::Approx(chordal_distance(y, x)).epsilon(1e-14));
        CHECK(chordal_distance(x, y) == doctest::Approx(oracle::chordal(a, b)).epsilon(1e-12));
        CHECK(chordal_distance(x, z) <= chordal_distance(x, y) + chordal_distance(y, z) + 1e-15);
    }
}

TEST_CASE("points are stored with the larger component equal to one") {
    const SpherePoint big(Cplx(1e200, 3e199), Cplx(2e199));
    CHECK(std::abs(big.z0()) == doctest::Approx(1.0));
    CHECK(big.chart() == Chart::Inverted);
    const SpherePoint small(Cplx(1e-300), Cplx(3e-300));
    CHECK(small.z1() == Cplx(1.0));
    CHECK(std::abs(small.z0() - Cplx(1.0 / 3.0)) < 1e-15);
    CHECK_THROWS_AS(SpherePoint(0.0, 0.0), Error);
}

TEST_CASE("eval_sphere is projective") {
    const SphereMap f = SphereMap::from_coefficients({Cplx(1.0), Cplx(0.3, 0.1), Cplx(2.0)},
                                                     {Cplx(0.5), Cplx(-1.0), Cplx(0.2, 0.7)});
    std::mt19937_64 gen(3);
    for (int k = 0; k < 100; ++k) {
        const Cplx z = oracle::random_point(gen, 3.0);
        const Cplx lambda = oracle::random_point(gen, 10.0);
        const SpherePoint a = eval_sphere(f, SpherePoint(z, 1.0));
        const SpherePoint b = eval_sphere(f, SpherePoint(lambda * z, lambda));
        CHECK(chordal_distance(a, b) < 1e-12);
        // and agrees with the affine rational function
        CHECK(chordal_distance(a, SpherePoint::finite(oracle::eval_rational(f.p(), f.q(), z))) < 1e-12);
    }
}

TEST_CASE("iterate_sphere coefficient examples") {
    const SphereMap sq = SphereMap::power(2);
    const SphereMap id = iterate_sphere(sq, 0);
    CHECK(id.degree() == 1);
    CHECK(chordal_distance(eval_sphere(id, SpherePoint::finite(Cplx(0.3, 2.0))), SpherePoint::finite(Cplx(0.3, 2.0))) < 1e-15);

    const SphereMap z8 = iterate_sphere(sq, 3);
    REQUIRE(z8.degree() == 8);
    for (int j = 0; j < 8; ++j) CHECK(std::abs(z8.p()[j]) < 1e-15);
    CHECK(z8.p()[8] != Cplx(0.0));
    CHECK(std::abs(z8.q()[0]) > 0.0);

    // (z^2 - 2)^2 - 2 = z^4 - 4 z^2 + 2
    const SphereMap c2 = iterate_sphere(SphereMap::chebyshev(), 2);
    REQUIRE(c2.degree() == 4);
    const Cplx lead = c2.p()[4];
    const double expected[] = {2.0, 0.0, -4.0, 0.0, 1.0};
    for (int j = 0; j <= 4; ++j) CHECK(std::abs(c2.p()[j] / lead - expected[j]) < 1e-14);
    CHECK(std::abs(c2.q()[0] / lead - 1.0) < 1e-14);
}

TEST_CASE("iterates compose") {
    const SphereMap f = SphereMap::quadratic(Cplx(0.1, 0.6));
    std::mt19937_64 gen(11);
    for (int m = 1; m <= 2; ++m) {
        for (int n = 1; n <= 2; ++n) {
            const SphereMap fm = iterate_sphere(f, m), fn = iterate_sphere(f, n), fmn = iterate_sphere(f, m + n);
            for (int k = 0; k < 100; ++k) {
                const SpherePoint x = SpherePoint::finite(oracle::random_point(gen, 1.5));
                CHECK(chordal_distance(eval_sphere(fmn, x), eval_sphere(fm, eval_sphere(fn, x))) < 1e-9);
            }
        }
    }
}

TEST_CASE("maps with a common root of numerator and denominator are rejected") {
    // (z - 1) z / ((z - 1)(z + 2))
    CHECK_THROWS_AS(SphereMap::from_coefficients({Cplx(0.0), Cplx(-1.0), Cplx(1.0)}, {Cplx(-2.0), Cplx(1.0), Cplx(1.0)}),
                    Error);
}

TEST_CASE("torus evaluation") {
    const TorusMap id(IntMatrix2{1, 0, 0, 1});
    const TorusPoint x(1.3, 5.9);
    CHECK(eval_torus(id, x).theta1 == doctest::Approx(1.3));
    CHECK(eval_torus(id, x).theta2 == doctest::Approx(5.9));

    const TorusMap A(IntMatrix2{3, 1, 1, 2});
    const TorusPoint origin = eval_torus(A, TorusPoint(0.0, 0.0));
    CHECK(origin.theta1 == 0.0);
    CHECK(origin.theta2 == 0.0);
    const TorusPoint y = eval_torus(A, TorusPoint(std::numbers::pi, 0.0));
    CHECK(y.theta1 == doctest::Approx(std::numbers::pi));
    CHECK(y.theta2 == doctest::Approx(std::numbers::pi));

    CHECK_THROWS_AS(TorusMap(IntMatrix2{2, 1, 4, 2}), Error);
}

TEST_CASE("torus angles stay in [0, 2 pi)") {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> u(-50.0, 50.0);
    const TorusMap A(IntMatrix2{3, 1, 1, 2});
    for (int k = 0; k < 500; ++k) {
        TorusPoint x(u(gen), u(gen));
        for (int i = 0; i < 5; ++i) x = eval_torus(A, x);
        CHECK(x.theta1 >= 0.0);
        CHECK(x.theta1 < 2.0 * std::numbers::pi);
        CHECK(x.theta2 >= 0.0);
        CHECK(x.theta2 < 2.0 * std::numbers::pi);
    }
}
