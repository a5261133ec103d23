#include "holodyn/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "holodyn/branches.hpp"
#include "holodyn/degrees.hpp"
#include "holodyn/errors.hpp"

namespace holodyn {

namespace {

constexpr double kCriticalSkipRadius = 1e-12;
constexpr double kMaxSkipFraction = 0.01;

}  // namespace

LyapunovEstimate estimate_sphere(const SphereMap& f, const AtomicMeasure& samples) {
    const std::vector<SphereAtom>& atoms = samples.sphere_atoms();
    if (atoms.size() < kMinLyapunovSamples) {
        throw Error(ErrorKind::InvalidArgument, "at least " + std::to_string(kMinLyapunovSamples) + " samples required");
    }
    const DegreeProfile profile = profile_sphere(f);
    if (!profile.dominant) throw Error(ErrorKind::NotDominant, "degree 1 maps have no Lyapunov floor");
    const std::vector<SpherePoint> critical = critical_orbit(f, 0).critical_points;

    LyapunovEstimate est;
    double weight = 0.0, sum = 0.0, sum_sq = 0.0, sum_w2 = 0.0;
    for (const SphereAtom& atom : atoms) {
        const bool singular = std::any_of(critical.begin(), critical.end(), [&](const SpherePoint& c) {
            return chordal_distance(c, atom.point) < kCriticalSkipRadius;
        });
        if (singular) {
            ++est.skipped;
            continue;
        }
        const double v = std::log(spherical_derivative(f, atom.point));
        weight += atom.weight;
        sum += atom.weight * v;
        sum_sq += atom.weight * v * v;
        sum_w2 += atom.weight * atom.weight;
    }
    if (static_cast<double>(est.skipped) > kMaxSkipFraction * static_cast<double>(atoms.size())) {
        throw Error(ErrorKind::DerivativeSingular, std::to_string(est.skipped) + " of " + std::to_string(atoms.size()) +
                                                       " samples sit on critical points");
    }
    est.sample_count = atoms.size() - est.skipped;
    est.chi = sum / weight;
    const double variance = std::max(0.0, sum_sq / weight - est.chi * est.chi);
    // effective sample size (weight)^2 / sum w^2 covers unequal weights
    est.standard_error = std::sqrt(variance * sum_w2) / weight;
    est.floor = *profile.lyapunov_floor;
    est.floor_satisfied = est.chi >= est.floor - 2.0 * est.standard_error;
    return est;
}

LyapunovEstimate estimate_torus(const TorusMap& f) {
    const DegreeProfile profile = profile_torus(f);
    if (!profile.dominant) {
        throw Error(ErrorKind::NotDominant, "monomial map " + to_string(f.matrix()) + " is not dominant");
    }
    LyapunovEstimate est;
    // the smaller modulus is |det| / rho for real and complex spectra alike
    est.chi = std::log(profile.topological / profile.degrees[1]);
    est.floor = *profile.lyapunov_floor;
    est.floor_satisfied = est.chi >= est.floor;
    return est;
}

}  // namespace holodyn
