#include <doctest.h>

#include <cmath>

#include "holodyn/errors.hpp"
#include "holodyn/exceptional.hpp"

using namespace holodyn;
using Cplx = std::complex<double>;

TEST_CASE("exceptional sets of the oracle maps") {
    const ExceptionalSet sq = find_exceptional(SphereMap::power(2));
    CHECK(sq.points.size() == 2);
    CHECK(sq.contains(SpherePoint::finite(0.0)));
    CHECK(sq.contains(SpherePoint::infinity()));
    CHECK_FALSE(sq.contains(SpherePoint::finite(1.0)));

    const ExceptionalSet ch = find_exceptional(SphereMap::chebyshev());
    REQUIRE(ch.points.size() == 1);
    CHECK(ch.points[0].is_infinity());

    // (z^2 - 1) / (z^2 + 1)
    const ExceptionalSet none = find_exceptional(SphereMap::from_coefficients({Cplx(-1.0), Cplx(0.0), Cplx(1.0)},
                                                                              {Cplx(1.0), Cplx(0.0), Cplx(1.0)}));
    CHECK(none.points.empty());

    // 1 / z^2 swaps 0 and infinity: a two-cycle exceptional set
    const ExceptionalSet swap = find_exceptional(SphereMap::from_coefficients({Cplx(1.0), Cplx(0.0), Cplx(0.0)},
                                                                              {Cplx(0.0), Cplx(0.0), Cplx(1.0)}));
    CHECK(swap.points.size() == 2);

    for (const SphereMap& f : {SphereMap::power(3), SphereMap::quadratic(Cplx(0.3, 0.4)), SphereMap::chebyshev(3)}) {
        const ExceptionalSet E = find_exceptional(f);
        CHECK(verify_invariance(f, E));
        CHECK(E.verified_depth >= 1);
    }
}

TEST_CASE("verify_invariance") {
    const SphereMap sq = SphereMap::power(2);
    CHECK(verify_invariance(sq, ExceptionalSet{{SpherePoint::finite(0.0), SpherePoint::infinity()}, 0}));
    CHECK_FALSE(verify_invariance(sq, ExceptionalSet{{SpherePoint::finite(1.0)}, 0}));
    CHECK(verify_invariance(sq, ExceptionalSet{}));
}

TEST_CASE("backward chain counts") {
    const SphereMap sq = SphereMap::power(2);
    const std::vector<SpherePoint> Y{SpherePoint::finite(0.0), SpherePoint::finite(1.0), SpherePoint::infinity()};
    for (int n = 1; n <= 6; ++n) CHECK(lambda_n(sq, SpherePoint::finite(1.0), Y, n) == 1);

    const std::vector<SpherePoint> E{SpherePoint::finite(0.0), SpherePoint::infinity()};
    for (int n = 1; n <= 12; ++n) CHECK(lambda_n(sq, SpherePoint::finite(0.0), E, n) == (std::int64_t{1} << n));

    CHECK_THROWS_AS(lambda_n(sq, SpherePoint::finite(0.5), E, 3), Error);
}

TEST_CASE("chains through non-exceptional points are a vanishing fraction") {
    for (const SphereMap& f : {SphereMap::power(2), SphereMap::chebyshev()}) {
        const ExceptionalSet E = find_exceptional(f);
        for (const Cplx a : {Cplx(0.3), Cplx(1.0), Cplx(-1.0), Cplx(2.0)}) {
            std::vector<SpherePoint> Y = E.points;
            Y.push_back(SpherePoint::finite(a));
            CHECK(static_cast<double>(lambda_n(f, SpherePoint::finite(a), Y, 12)) <= 0.01 * std::pow(2.0, 12));
        }
        for (const SpherePoint& e : E.points) {
            for (int n = 1; n <= 12; ++n) CHECK(lambda_n(f, e, E.points, n) == (std::int64_t{1} << n));
        }
    }
}
