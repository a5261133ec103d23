#include "holodyn/fibers.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "holodyn/degrees.hpp"
#include "holodyn/errors.hpp"
#include "holodyn/exceptional.hpp"
#include "holodyn/rng.hpp"
#include "holodyn/roots.hpp"

namespace holodyn {

namespace {

constexpr double kRoundTripTolerance = 1e-8;

std::size_t checked_atom_count(std::int64_t base, int n, std::size_t budget) {
    double count = 1.0;
    for (int i = 0; i < n; ++i) count *= static_cast<double>(base);
    if (count > static_cast<double>(budget)) {
        throw Error(ErrorKind::AtomBudgetExceeded, std::to_string(base) + "^" + std::to_string(n) +
                                                       " atoms exceed the budget of " + std::to_string(budget));
    }
    return static_cast<std::size_t>(count);
}

std::string at_depth(const Error& e, int depth) {
    return std::string(e.what()) + " (pullback depth " + std::to_string(depth) + ")";
}

}  // namespace

std::vector<SpherePoint> fiber_roots(const SphereMap& f, const SpherePoint& a) {
    // a1 p - a0 q vanishes exactly on f^{-1}([a0 : a1])
    const int d = f.degree();
    std::vector<Cplx> h(d + 1);
    for (int j = 0; j <= d; ++j) h[j] = a.z1() * f.p()[j] - a.z0() * f.q()[j];
    return homogeneous_roots_raw(h);
}

std::vector<SphereFiberPoint> fiber_sphere(const SphereMap& f, const SpherePoint& a) {
    const std::vector<SpherePoint> raw = fiber_roots(f, a);
    std::vector<SphereFiberPoint> out;
    for (const HomogeneousRoot& r : cluster_roots(raw, kFiberClusterRadius)) {
        // a cluster of m roots is only accurate to about eps^(1/m); scale the check
        const double tol = r.multiplicity == 1 ? kRoundTripTolerance : std::pow(kRoundTripTolerance, 1.0 / r.multiplicity);
        const double residual = chordal_distance(eval_sphere(f, r.point), a);
        if (residual > std::max(tol, kRoundTripTolerance)) {
            throw Error(ErrorKind::SolverDiverged, "fiber point " + to_string(r.point) + " maps to distance " +
                                                       std::to_string(residual) + " from the target");
        }
        out.push_back({r.point, r.multiplicity});
    }
    return out;
}

std::vector<TorusFiberPoint> fiber_torus(const TorusMap& f, const TorusPoint& a) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    const IntMatrix2& m = f.matrix();
    const IntMatrix2 adj = m.adjugate();
    const double det = static_cast<double>(m.det());
    const double u1 = a.theta1 / two_pi, u2 = a.theta2 / two_pi;
    const double base1 = (static_cast<double>(adj.a) * u1 + static_cast<double>(adj.b) * u2) / det;
    const double base2 = (static_cast<double>(adj.c) * u1 + static_cast<double>(adj.d) * u2) / det;
    const std::int64_t idet = m.det();

    std::vector<TorusFiberPoint> out;
    for (const auto& k : coset_representatives(m)) {
        // A^{-1} k = adj(A) k / det, reduced exactly modulo det first
        std::int64_t n1 = (adj.a * k[0] + adj.b * k[1]) % idet;
        std::int64_t n2 = (adj.c * k[0] + adj.d * k[1]) % idet;
        double v1 = base1 + static_cast<double>(n1) / det;
        double v2 = base2 + static_cast<double>(n2) / det;
        v1 -= std::floor(v1);
        v2 -= std::floor(v2);
        out.push_back({TorusPoint(two_pi * v1, two_pi * v2), 1});
    }
    std::sort(out.begin(), out.end(),
              [](const TorusFiberPoint& x, const TorusFiberPoint& y) { return canonical_less(x.point, y.point); });
    return out;
}

AtomicMeasure pullback_measure(const SphereMap& f, const SpherePoint& a, int n, std::size_t atom_budget) {
    if (n < 0) throw Error(ErrorKind::InvalidArgument, "pullback depth must be non-negative");
    const int d = f.degree();
    checked_atom_count(d, n, atom_budget);
    std::vector<SphereAtom> atoms{{a, 1.0}};
    for (int depth = 1; depth <= n; ++depth) {
        std::vector<SphereAtom> next;
        next.reserve(atoms.size() * static_cast<std::size_t>(d));
        try {
            for (const SphereAtom& atom : atoms) {
                for (const SphereFiberPoint& b : fiber_sphere(f, atom.point)) {
                    next.push_back({b.point, atom.weight * b.multiplicity / d});
                }
            }
        } catch (const Error& e) {
            throw Error(e.kind(), at_depth(e, depth));
        }
        atoms = std::move(next);
    }
    AtomicMeasure mu(std::move(atoms));
    mu.canonicalize();
    return mu;
}

AtomicMeasure pullback_measure(const TorusMap& f, const TorusPoint& a, int n, std::size_t atom_budget) {
    if (n < 0) throw Error(ErrorKind::InvalidArgument, "pullback depth must be non-negative");
    const std::int64_t dt = std::llabs(f.matrix().det());
    checked_atom_count(dt, n, atom_budget);
    std::vector<TorusAtom> atoms{{a, 1.0}};
    for (int depth = 1; depth <= n; ++depth) {
        std::vector<TorusAtom> next;
        next.reserve(atoms.size() * static_cast<std::size_t>(dt));
        for (const TorusAtom& atom : atoms) {
            for (const TorusFiberPoint& b : fiber_torus(f, atom.point)) {
                next.push_back({b.point, atom.weight / static_cast<double>(dt)});
            }
        }
        atoms = std::move(next);
    }
    AtomicMeasure mu(std::move(atoms));
    mu.canonicalize();
    return mu;
}

AtomicMeasure sample_equilibrium(const SphereMap& f, const SpherePoint& a, int burn_in, int count,
                                 std::uint64_t seed) {
    if (count <= 0) throw Error(ErrorKind::EmptyMeasure, "sample count must be positive");
    if (burn_in < 0) throw Error(ErrorKind::InvalidArgument, "burn-in must be non-negative");
    if (!profile_sphere(f).dominant) throw Error(ErrorKind::NotDominant, "backward sampling needs degree >= 2");
    if (find_exceptional(f).contains(a)) {
        throw Error(ErrorKind::ExceptionalStart, to_string(a) + " lies in the exceptional set");
    }
    Rng rng(seed);
    const int d = f.degree();
    std::vector<SphereAtom> atoms;
    atoms.reserve(static_cast<std::size_t>(count));
    SpherePoint x = a;
    for (int step = 0; step < burn_in + count; ++step) {
        const std::vector<SphereFiberPoint> fiber = fiber_sphere(f, x);
        int pick = static_cast<int>(rng.index(static_cast<std::size_t>(d)));
        for (const SphereFiberPoint& b : fiber) {
            if (pick < b.multiplicity) {
                x = b.point;
                break;
            }
            pick -= b.multiplicity;
        }
        if (step >= burn_in) atoms.push_back({x, 1.0 / count});
    }
    AtomicMeasure mu(std::move(atoms));
    mu.canonicalize();
    return mu;
}

AtomicMeasure sample_equilibrium(const TorusMap& f, const TorusPoint& a, int burn_in, int count,
                                 std::uint64_t seed) {
    if (count <= 0) throw Error(ErrorKind::EmptyMeasure, "sample count must be positive");
    if (burn_in < 0) throw Error(ErrorKind::InvalidArgument, "burn-in must be non-negative");
    if (!profile_torus(f).dominant) {
        throw Error(ErrorKind::NotDominant, "monomial map " + to_string(f.matrix()) + " is not dominant");
    }
    Rng rng(seed);
    std::vector<TorusAtom> atoms;
    atoms.reserve(static_cast<std::size_t>(count));
    TorusPoint x = a;
    for (int step = 0; step < burn_in + count; ++step) {
        const std::vector<TorusFiberPoint> fiber = fiber_torus(f, x);
        x = fiber[rng.index(fiber.size())].point;
        if (step >= burn_in) atoms.push_back({x, 1.0 / count});
    }
    AtomicMeasure mu(std::move(atoms));
    mu.canonicalize();
    return mu;
}

}  // namespace holodyn
