#include "holodyn/exceptional.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "holodyn/errors.hpp"
#include "holodyn/fibers.hpp"
#include "holodyn/roots.hpp"

namespace holodyn {

namespace {

constexpr double kProportionalityTolerance = 1e-7;

// Coefficients of (b1 z0 - b0 z1)^d in the z0-ascending convention.
std::vector<Cplx> linear_power(const SpherePoint& b, int d) {
    std::vector<Cplx> out(d + 1);
    double binom = 1.0;
    for (int j = 0; j <= d; ++j) {
        out[j] = binom * std::pow(b.z1(), j) * std::pow(-b.z0(), d - j);
        binom = binom * (d - j) / (j + 1);
    }
    return out;
}

// Sine of the angle between two coefficient vectors.
double projective_gap(const std::vector<Cplx>& u, const std::vector<Cplx>& v) {
    double nu = 0.0, nv = 0.0;
    Cplx inner = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        nu += std::norm(u[j]);
        nv += std::norm(v[j]);
        inner += std::conj(u[j]) * v[j];
    }
    if (nu == 0.0 || nv == 0.0) return 1.0;
    return std::sqrt(std::max(0.0, 1.0 - std::norm(inner) / (nu * nv)));
}

// Whole fiber of a is the single point b (with multiplicity d).
bool totally_ramified(const SphereMap& f, const SpherePoint& a, const SpherePoint& b) {
    const int d = f.degree();
    std::vector<Cplx> h(d + 1);
    for (int j = 0; j <= d; ++j) h[j] = a.z1() * f.p()[j] - a.z0() * f.q()[j];
    return projective_gap(h, linear_power(b, d)) < kProportionalityTolerance;
}

}  // namespace

bool ExceptionalSet::contains(const SpherePoint& x, double tolerance) const {
    return std::any_of(points.begin(), points.end(),
                       [&](const SpherePoint& e) { return chordal_distance(e, x) <= tolerance; });
}

ExceptionalSet find_exceptional(const SphereMap& f) {
    const int d = f.degree();
    if (d < 2) throw Error(ErrorKind::InvalidArgument, "exceptional set needs degree >= 2");

    // Exceptional points have period 1 or 2: roots of P2 z1 - Q2 z0.
    const SphereMap f2 = iterate_sphere(f, 2);
    const std::size_t m = f2.p().size();
    std::vector<Cplx> fixed2(m + 1, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
        fixed2[j] += f2.p()[j];
        fixed2[j + 1] -= f2.q()[j];
    }
    std::vector<SpherePoint> candidates;
    for (const HomogeneousRoot& r : homogeneous_roots(fixed2)) candidates.push_back(r.point);

    // preimage[i] = j when f^{-1}(candidate i) = {candidate j}
    const std::size_t n = candidates.size();
    std::vector<std::ptrdiff_t> preimage(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (totally_ramified(f, candidates[i], candidates[j])) {
                preimage[i] = static_cast<std::ptrdiff_t>(j);
                break;
            }
        }
    }
    // largest subset closed under taking preimages
    std::vector<char> keep(n);
    for (std::size_t i = 0; i < n; ++i) keep[i] = preimage[i] >= 0;
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (keep[i] && !keep[static_cast<std::size_t>(preimage[i])]) {
                keep[i] = 0;
                changed = true;
            }
        }
    }
    ExceptionalSet out;
    for (std::size_t i = 0; i < n; ++i) {
        if (keep[i]) out.points.push_back(candidates[i]);
    }
    if (out.points.size() > 2) {
        throw Error(ErrorKind::SolverDiverged,
                    std::to_string(out.points.size()) + " totally invariant points found; at most 2 can exist");
    }
    out.verified_depth = verify_invariance(f, out) ? 1 : 0;
    return out;
}

std::int64_t lambda_n(const SphereMap& f, const SpherePoint& a, const std::vector<SpherePoint>& Y, int n,
                      std::int64_t atom_budget) {
    if (n < 0) throw Error(ErrorKind::InvalidArgument, "depth must be non-negative");
    const int d = f.degree();
    if (n * std::log(static_cast<double>(d)) > std::log(static_cast<double>(atom_budget))) {
        throw Error(ErrorKind::AtomBudgetExceeded, std::to_string(d) + "^" + std::to_string(n) +
                                                       " chains exceed the budget of " + std::to_string(atom_budget));
    }
    auto locate = [&](const SpherePoint& x) -> std::ptrdiff_t {
        for (std::size_t i = 0; i < Y.size(); ++i) {
            if (chordal_distance(Y[i], x) <= kMembershipTolerance) return static_cast<std::ptrdiff_t>(i);
        }
        return -1;
    };
    const std::ptrdiff_t start = locate(a);
    if (start < 0) throw Error(ErrorKind::InvalidArgument, "the start point must belong to Y");

    // transitions[i][j]: multiplicity of Y[j] in the fiber over Y[i]
    const std::size_t m = Y.size();
    std::vector<std::vector<std::int64_t>> transitions(m, std::vector<std::int64_t>(m, 0));
    for (std::size_t i = 0; i < m; ++i) {
        for (const SphereFiberPoint& b : fiber_sphere(f, Y[i])) {
            const std::ptrdiff_t j = locate(b.point);
            if (j >= 0) transitions[i][static_cast<std::size_t>(j)] += b.multiplicity;
        }
    }
    std::vector<std::int64_t> chains(m, 0);
    chains[static_cast<std::size_t>(start)] = 1;
    for (int step = 0; step < n; ++step) {
        std::vector<std::int64_t> next(m, 0);
        for (std::size_t i = 0; i < m; ++i) {
            if (chains[i] == 0) continue;
            for (std::size_t j = 0; j < m; ++j) next[j] += chains[i] * transitions[i][j];
        }
        chains = std::move(next);
    }
    std::int64_t total = 0;
    for (std::int64_t c : chains) total += c;
    return total;
}

bool verify_invariance(const SphereMap& f, const ExceptionalSet& E) {
    for (const SpherePoint& e : E.points) {
        if (!E.contains(eval_sphere(f, e))) return false;
        for (const SphereFiberPoint& b : fiber_sphere(f, e)) {
            if (!E.contains(b.point)) return false;
        }
    }
    return true;
}

}  // namespace holodyn
