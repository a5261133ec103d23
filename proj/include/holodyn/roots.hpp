#pragma once

// Simultaneous (Aberth-Ehrlich) polynomial root finding.
//
// The iteration only needs the Newton correction p(z)/p'(z) at each iterate,
// so it works both for polynomials given by coefficients and for polynomials
// that are only available through an evaluation routine (for example the
// fixed-point polynomial of an iterate, evaluated along the orbit).

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "holodyn/core.hpp"
#include "holodyn/errors.hpp"

namespace holodyn {

struct NewtonStep {
    Cplx correction;  // p(z) / p'(z)
    double residual;  // relative backward error estimate at z
};

struct RootSolveOptions {
    double residual_tolerance = 1e-12;  // acceptance for roots that never met the step criterion
    double converged_residual = 1e-15;  // rounding floor: stop refining below this
    double step_tolerance = 1e-12;      // relative Aberth correction that marks a root converged
    int max_sweeps = 500;
};

// Points on a circle of the given radius, rotated off the real axis.
std::vector<Cplx> circle_start(std::size_t count, double radius, double phase = 0.4);

template <class Evaluator>
std::vector<Cplx> aberth_solve(Evaluator&& eval, std::vector<Cplx> z, const RootSolveOptions& opt = {}) {
    const std::size_t n = z.size();
    std::vector<char> done(n, 0);
    for (int sweep = 0; sweep < opt.max_sweeps; ++sweep) {
        bool active = false;
        for (std::size_t k = 0; k < n; ++k) {
            if (done[k]) continue;
            active = true;
            const NewtonStep s = eval(z[k]);
            if (s.residual <= opt.converged_residual) {
                done[k] = 1;
                continue;
            }
            if (!std::isfinite(s.correction.real()) || !std::isfinite(s.correction.imag())) {
                // stationary point of p: nudge off it
                z[k] += Cplx(1e-7, 1e-7) * std::max(1.0, std::abs(z[k]));
                continue;
            }
            Cplx repulsion = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j != k) repulsion += 1.0 / (z[k] - z[j]);
            }
            Cplx w = s.correction / (1.0 - s.correction * repulsion);
            if (!std::isfinite(repulsion.real()) || !std::isfinite(repulsion.imag())) {
                z[k] += Cplx(1e-9, 1e-9) * std::max(1.0, std::abs(z[k]));
                continue;
            }
            if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) w = s.correction;
            z[k] -= w;
            if (std::abs(w) <= opt.step_tolerance * std::max(1.0, std::abs(z[k]))) done[k] = 1;
        }
        if (!active) break;
    }
    for (std::size_t k = 0; k < n; ++k) {
        if (done[k]) continue;
        const NewtonStep s = eval(z[k]);
        if (!(s.residual <= opt.residual_tolerance)) {
            throw Error(ErrorKind::SolverDiverged,
                        "root " + std::to_string(k) + " of " + std::to_string(n) + " has residual " +
                            std::to_string(s.residual) + " after " + std::to_string(opt.max_sweeps) + " sweeps");
        }
    }
    return z;
}

// Roots of sum_j c[j] z^j (c.back() != 0), with closed forms for degree <= 2.
std::vector<Cplx> polynomial_roots(std::span<const Cplx> c, const RootSolveOptions& opt = {});

struct HomogeneousRoot {
    SpherePoint point;
    int multiplicity;
};

// All roots on the sphere of sum_j c[j] z0^j z1^(D-j), repeated by
// multiplicity.  Coefficients below kDegeneracyTolerance relative to the
// largest one at either end are booked as roots at 0 or infinity.
std::vector<SpherePoint> homogeneous_roots_raw(std::span<const Cplx> c, const RootSolveOptions& opt = {});

// Groups roots within `radius` (chordal) into single points with multiplicity.
std::vector<HomogeneousRoot> cluster_roots(std::span<const SpherePoint> roots, double radius);

std::vector<HomogeneousRoot> homogeneous_roots(std::span<const Cplx> c, double cluster_radius = 1e-6);

}  // namespace holodyn
