#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "holodyn/branches.hpp"
#include "holodyn/errors.hpp"
#include "holodyn/fibers.hpp"
#include "oracles.hpp"

using namespace holodyn;
using oracle::Cplx;

namespace {

bool has_point(const std::vector<ObstructionPoint>& pts, const SpherePoint& x) {
    return std::any_of(pts.begin(), pts.end(), [&](const ObstructionPoint& o) { return chordal_distance(o.point, x) < 1e-9; });
}

std::int64_t alive_weight(const std::vector<BranchRecord>& rs) {
    std::int64_t s = 0;
    for (const auto& r : rs) s += r.status == BranchStatus::Alive ? r.leaf_weight : 0;
    return s;
}

}  // namespace

TEST_CASE("critical orbits") {
    const ObstructionSet sq = critical_orbit(SphereMap::power(2), 5);
    REQUIRE(sq.critical_points.size() == 2);
    CHECK(sq.points.size() == 2);
    CHECK(has_point(sq.points, SpherePoint::finite(0.0)));
    CHECK(has_point(sq.points, SpherePoint::infinity()));

    const ObstructionSet ch = critical_orbit(SphereMap::chebyshev(), 6);
    CHECK(ch.points.size() == 3);
    CHECK(has_point(ch.points, SpherePoint::finite(-2.0)));
    CHECK(has_point(ch.points, SpherePoint::finite(2.0)));
    CHECK(has_point(ch.points, SpherePoint::infinity()));
    for (const auto& o : ch.points) {
        if (chordal_distance(o.point, SpherePoint::finite(2.0)) < 1e-9) CHECK(o.depth == 2);
        if (chordal_distance(o.point, SpherePoint::finite(-2.0)) < 1e-9) CHECK(o.depth == 1);
    }

    // z^2 + i: orbit of 0 is i, i - 1, -i, i - 1, ...
    const ObstructionSet qi = critical_orbit(SphereMap::quadratic(Cplx(0.0, 1.0)), 3);
    CHECK(has_point(qi.points, SpherePoint::finite(Cplx(0.0, 1.0))));
    CHECK(has_point(qi.points, SpherePoint::finite(Cplx(-1.0, 1.0))));
    CHECK(has_point(qi.points, SpherePoint::finite(Cplx(0.0, -1.0))));
}

TEST_CASE("branches of z^2 over a disc around 2") {
    const SphereMap sq = SphereMap::power(2);
    const Disc disc{SpherePoint::finite(2.0), 0.1};
    const auto rs = track_branches(sq, disc, 5, 1);
    REQUIRE(rs.size() == 32);
    for (const auto& r : rs) CHECK(r.status == BranchStatus::Alive);

    // every branch is a rotation of the principal 32nd root, so all images
    // share the diameter of the principal image of a finely sampled circle
    std::vector<Cplx> image;
    for (int k = 0; k < 4096; ++k) image.push_back(std::pow(2.0 + std::polar(0.1, 2.0 * std::numbers::pi * k / 4096), 1.0 / 32.0));
    double expected = 0.0;
    for (std::size_t i = 0; i < image.size(); ++i) {
        for (std::size_t j = i + 1; j < image.size(); j += 7) expected = std::max(expected, oracle::chordal(image[i], image[j]));
    }
    for (const auto& r : rs) CHECK(r.diameters.back() == doctest::Approx(expected).epsilon(0.02));
}

TEST_CASE("a disc around a critical value dies at the first step") {
    const auto rs = track_branches(SphereMap::power(2), {SpherePoint::finite(0.05), 0.1}, 4, 1);
    REQUIRE(rs.size() == 1);
    CHECK(rs[0].status == BranchStatus::NearCritical);
    CHECK(rs[0].order == 1);
    CHECK(rs[0].leaf_weight == 16);
    const BranchStatistics s = branch_statistics(rs, 0.1);
    CHECK(s.survival_fraction == 0.0);
    CHECK(s.size_bound_fraction == 1.0);
}

TEST_CASE("order zero keeps the disc") {
    const Disc disc{SpherePoint::finite(Cplx(0.4, 0.2)), 0.2};
    const auto rs = track_branches(SphereMap::chebyshev(), disc, 0, 1);
    REQUIRE(rs.size() == 1);
    CHECK(rs[0].status == BranchStatus::Alive);
    // chordal diameter of the Euclidean disc: the two ends of the diameter through the center
    const Cplx c(0.4, 0.2);
    double expected = 0.0;
    for (int k = 0; k < 2000; ++k) {
        const Cplx u = std::polar(1.0, std::numbers::pi * k / 1000.0);
        expected = std::max(expected, oracle::chordal(c + 0.2 * u, c - 0.2 * u));
    }
    CHECK(rs[0].diameters[0] == doctest::Approx(expected).epsilon(1e-3));
}

TEST_CASE("branch statistics for z^2 - 2 at 0.7") {
    const SphereMap f = SphereMap::chebyshev();
    const Disc disc{SpherePoint::finite(0.7), 0.05};
    const auto rs = track_branches(f, disc, 10, 5);
    const BranchStatistics s = branch_statistics(rs, 0.1);
    CHECK(s.total == 1024);
    CHECK(s.survival_fraction >= 0.9);
    CHECK(s.size_bound_fraction == 1.0);

    // anchors are genuine fiber points of f^10 over the center
    const AtomicMeasure fiber = pullback_measure(f, disc.center, 10);
    for (const auto& r : rs) {
        if (r.status != BranchStatus::Alive) continue;
        CHECK(chordal_distance(eval_iterate(f, r.anchor, 10), disc.center) < 1e-7);
        const bool in_fiber = std::any_of(fiber.sphere_atoms().begin(), fiber.sphere_atoms().end(),
                                          [&](const SphereAtom& a) { return chordal_distance(a.point, r.anchor) < 1e-7; });
        CHECK(in_fiber);
    }
    CHECK_THROWS_AS(branch_statistics({}, 0.1), Error);
}

TEST_CASE("diameters shrink outside the unit disc for z^2") {
    const SphereMap sq = SphereMap::power(2);
    for (const Cplx c : {Cplx(1.5), Cplx(0.0, 2.0), Cplx(-1.8, 1.0)}) {
        for (const auto& r : track_branches(sq, {SpherePoint::finite(c), 0.1}, 4, 2)) {
            REQUIRE(r.status == BranchStatus::Alive);
            for (std::size_t i = 0; i + 1 < r.diameters.size(); ++i) CHECK(r.diameters[i + 1] <= r.diameters[i]);
        }
    }
}

TEST_CASE("survival never increases with the order") {
    const SphereMap f = SphereMap::chebyshev();
    for (const double c : {1.96, -1.5, 0.2}) {
        const Disc disc{SpherePoint::finite(c), 0.03};
        double previous = 1.0;
        for (int n = 0; n <= 8; ++n) {
            const auto rs = track_branches(f, disc, n, 9);
            const double s = branch_statistics(rs, 0.1).survival_fraction;
            CHECK(s <= previous);
            CHECK(alive_weight(rs) <= static_cast<std::int64_t>(std::pow(2, n)));
            previous = s;
        }
    }
}

TEST_CASE("a disc around 2 keeps exactly the two univalent branches") {
    // f^n - 2 has two simple roots (+-2) and double roots elsewhere
    const auto rs = track_branches(SphereMap::chebyshev(), {SpherePoint::finite(2.0), 0.01}, 6, 1);
    CHECK(alive_weight(rs) == 2);
}

TEST_CASE("argument checks") {
    const SphereMap f = SphereMap::power(2);
    CHECK_THROWS_AS(track_branches(f, {SpherePoint::finite(1.0), 0.1}, -1, 1), Error);
    CHECK_THROWS_AS(track_branches(f, {SpherePoint::finite(1.0), 0.0}, 2, 1), Error);
    BranchOptions o;
    o.boundary_samples = 16;
    CHECK_THROWS_AS(track_branches(f, {SpherePoint::finite(1.0), 0.1}, 2, 1, o), Error);
}
