#include "holodyn/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "holodyn/errors.hpp"
#include "holodyn/rng.hpp"

namespace holodyn {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_bins(int bins) {
    if (bins < 4) throw Error(ErrorKind::InvalidArgument, "at least 4 bins per axis required");
}

int clamp_bin(double position, int bins) {
    const int k = static_cast<int>(std::floor(position * bins));
    return std::clamp(k, 0, bins - 1);
}

double arcsine_cdf(double x, double a, double b) {
    const double s = std::clamp((2.0 * x - a - b) / (b - a), -1.0, 1.0);
    return 0.5 + std::asin(s) / std::numbers::pi;
}

// Distance from an atom to the unit circle, or to the real segment [a, b].
double circle_gap(const SpherePoint& x) {
    if (x.is_infinity()) return std::numeric_limits<double>::infinity();
    return std::fabs(std::abs(x.affine()) - 1.0);
}

double segment_gap(const SpherePoint& x, double a, double b) {
    if (x.is_infinity()) return std::numeric_limits<double>::infinity();
    const Cplx z = x.affine();
    const double re = std::clamp(z.real(), a, b);
    return std::abs(z - Cplx(re, 0.0));
}

double angle01(const Cplx& z) {
    double u = std::arg(z) / kTwoPi;
    if (u < 0.0) u += 1.0;
    return u >= 1.0 ? 0.0 : u;
}

// Fixed generic rotation applied before equal-area binning, so that no
// oracle support (unit circle, real segment) lies on a bin boundary.
std::array<double, 3> rotate(const std::array<double, 3>& e) {
    static const double a = 0.7137, b = 0.4219;
    const double ca = std::cos(a), sa = std::sin(a), cb = std::cos(b), sb = std::sin(b);
    const double x1 = ca * e[0] - sa * e[1], y1 = sa * e[0] + ca * e[1], z1 = e[2];
    return {x1, cb * y1 - sb * z1, sb * y1 + cb * z1};
}

std::vector<double> sphere_grid(const AtomicMeasure& mu, int bins) {
    std::vector<double> mass(static_cast<std::size_t>(bins) * bins, 0.0);
    for (const SphereAtom& atom : mu.sphere_atoms()) {
        const auto e = rotate(atom.point.embed());
        const int band = clamp_bin(0.5 * (e[2] + 1.0), bins);
        double phi = std::atan2(e[1], e[0]) / kTwoPi;
        if (phi < 0.0) phi += 1.0;
        mass[static_cast<std::size_t>(band) * bins + clamp_bin(phi, bins)] += atom.weight;
    }
    return mass;
}

std::vector<double> torus_grid(const AtomicMeasure& mu, int bins) {
    std::vector<double> mass(static_cast<std::size_t>(bins) * bins, 0.0);
    for (const TorusAtom& atom : mu.torus_atoms()) {
        const int i = clamp_bin(atom.point.theta1 / kTwoPi, bins);
        const int j = clamp_bin(atom.point.theta2 / kTwoPi, bins);
        mass[static_cast<std::size_t>(i) * bins + j] += atom.weight;
    }
    return mass;
}

double half_l1(const std::vector<double>& u, const std::vector<double>& v) {
    double s = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) s += std::fabs(u[k] - v[k]);
    return 0.5 * s;
}

}  // namespace

ReferenceMeasure ReferenceMeasure::arcsine(double a, double b) {
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
        throw Error(ErrorKind::InvalidArgument, "arcsine endpoints must be finite with a < b");
    }
    return {Kind::ArcsineInterval, a, b, {}};
}

Space ReferenceMeasure::space() const {
    switch (kind) {
        case Kind::TorusHaar: return Space::Torus;
        case Kind::Sampled: return sample.space();
        default: return Space::Sphere;
    }
}

std::string to_string(ReferenceMeasure::Kind kind) {
    switch (kind) {
        case ReferenceMeasure::Kind::CircleHaar: return "circle_haar";
        case ReferenceMeasure::Kind::TorusHaar: return "torus_haar";
        case ReferenceMeasure::Kind::ArcsineInterval: return "arcsine_interval";
        case ReferenceMeasure::Kind::Sampled: return "sampled";
    }
    return "unknown";
}

double binned_tv(const AtomicMeasure& mu, const ReferenceMeasure& ref, int bins) {
    require_bins(bins);
    if (mu.space() != ref.space()) {
        throw Error(ErrorKind::SpaceMismatch, std::string("measure on the ") + std::string(to_string(mu.space())) +
                                                  " compared with a reference on the " +
                                                  std::string(to_string(ref.space())));
    }
    switch (ref.kind) {
        case ReferenceMeasure::Kind::Sampled:
            return binned_tv(mu, ref.sample, bins);
        case ReferenceMeasure::Kind::TorusHaar:
            return binned_tv_torus_histogram(torus_grid(mu, bins), bins);
        case ReferenceMeasure::Kind::CircleHaar:
        case ReferenceMeasure::Kind::ArcsineInterval: {
            // last slot collects atoms away from the support
            std::vector<double> mass(static_cast<std::size_t>(bins) + 1, 0.0);
            std::vector<double> reference(static_cast<std::size_t>(bins) + 1, 1.0 / bins);
            reference.back() = 0.0;
            const bool circle = ref.kind == ReferenceMeasure::Kind::CircleHaar;
            for (const SphereAtom& atom : mu.sphere_atoms()) {
                const double gap = circle ? circle_gap(atom.point) : segment_gap(atom.point, ref.lower, ref.upper);
                if (gap > kProjectionTolerance) {
                    mass.back() += atom.weight;
                    continue;
                }
                int k;
                if (circle) {
                    k = static_cast<int>(std::floor(angle01(atom.point.affine()) * bins + 0.5)) % bins;
                } else {
                    const double x = std::clamp(atom.point.affine().real(), ref.lower, ref.upper);
                    k = clamp_bin(arcsine_cdf(x, ref.lower, ref.upper), bins);
                }
                mass[static_cast<std::size_t>(k)] += atom.weight;
            }
            return half_l1(mass, reference);
        }
    }
    return 0.0;
}

double binned_tv(const AtomicMeasure& mu, const AtomicMeasure& nu, int bins) {
    require_bins(bins);
    if (mu.space() != nu.space()) throw Error(ErrorKind::SpaceMismatch, "measures live on different spaces");
    if (mu.space() == Space::Torus) return half_l1(torus_grid(mu, bins), torus_grid(nu, bins));
    return half_l1(sphere_grid(mu, bins), sphere_grid(nu, bins));
}

double binned_tv_torus_histogram(std::span<const double> masses, int bins) {
    require_bins(bins);
    const std::size_t cells = static_cast<std::size_t>(bins) * bins;
    if (masses.size() != cells) throw Error(ErrorKind::InvalidArgument, "histogram size does not match the grid");
    const double cell = 1.0 / static_cast<double>(cells);
    double s = 0.0;
    for (double m : masses) s += std::fabs(m - cell);
    return 0.5 * s;
}

double ks_distance(const AtomicMeasure& mu, const ReferenceMeasure& ref) {
    const bool circle = ref.kind == ReferenceMeasure::Kind::CircleHaar;
    if (!circle && ref.kind != ReferenceMeasure::Kind::ArcsineInterval) {
        throw Error(ErrorKind::InvalidArgument, "KS distance needs a one-dimensional reference");
    }
    if (mu.space() != Space::Sphere) throw Error(ErrorKind::SpaceMismatch, "KS distance needs a sphere measure");
    const double total = mu.total_mass();
    if (!(total > 0.0)) throw Error(ErrorKind::EmptyMeasure, "KS distance of an empty measure");

    std::vector<std::pair<double, double>> pts;  // (reference CDF at the atom, weight)
    for (const SphereAtom& atom : mu.sphere_atoms()) {
        const double gap = circle ? circle_gap(atom.point) : segment_gap(atom.point, ref.lower, ref.upper);
        if (gap > kProjectionTolerance) {
            throw Error(ErrorKind::ProjectionFailure,
                        "atom " + to_string(atom.point) + " is " + std::to_string(gap) + " away from the support");
        }
        const double u = circle ? angle01(atom.point.affine())
                                : arcsine_cdf(atom.point.affine().real(), ref.lower, ref.upper);
        pts.emplace_back(u, atom.weight / total);
    }
    std::sort(pts.begin(), pts.end());
    // D = empirical CDF - reference CDF just before and after every jump
    double cum = 0.0, lo = 0.0, hi = 0.0;
    for (const auto& [u, w] : pts) {
        lo = std::min(lo, cum - u);
        hi = std::max(hi, cum - u);
        cum += w;
        lo = std::min(lo, cum - u);
        hi = std::max(hi, cum - u);
    }
    if (circle) return 0.5 * (hi - lo);  // best rotation of the circle
    return std::max(hi, -lo);
}

double lipschitz_gap(const AtomicMeasure& mu, const AtomicMeasure& nu, std::uint64_t seed, int count) {
    if (count < 1) throw Error(ErrorKind::InvalidArgument, "need at least one test function");
    if (mu.space() != nu.space()) throw Error(ErrorKind::SpaceMismatch, "measures live on different spaces");
    Rng rng(seed);
    double gap = 0.0;
    if (mu.space() == Space::Sphere) {
        std::vector<std::array<double, 3>> em, en;
        for (const SphereAtom& a : mu.sphere_atoms()) em.push_back(a.point.embed());
        for (const SphereAtom& a : nu.sphere_atoms()) en.push_back(a.point.embed());
        for (int i = 0; i < count; ++i) {
            const double h = 2.0 * rng.uniform() - 1.0, phi = kTwoPi * rng.uniform();
            const double r = std::sqrt(std::max(0.0, 1.0 - h * h));
            const std::array<double, 3> y{r * std::cos(phi), r * std::sin(phi), h};
            double im = 0.0, in = 0.0;
            for (std::size_t k = 0; k < em.size(); ++k) im += mu.sphere_atoms()[k].weight * chordal_from_embedding(em[k], y);
            for (std::size_t k = 0; k < en.size(); ++k) in += nu.sphere_atoms()[k].weight * chordal_from_embedding(en[k], y);
            gap = std::max(gap, std::fabs(im - in));
        }
        return gap;
    }
    for (int i = 0; i < count; ++i) {
        const TorusPoint y(kTwoPi * rng.uniform(), kTwoPi * rng.uniform());
        double im = 0.0, in = 0.0;
        for (const TorusAtom& a : mu.torus_atoms()) im += a.weight * torus_distance(a.point, y);
        for (const TorusAtom& a : nu.torus_atoms()) in += a.weight * torus_distance(a.point, y);
        gap = std::max(gap, std::fabs(im - in));
    }
    return gap;
}

AtomicMeasure reference_atoms(const ReferenceMeasure& ref, int n) {
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "need at least one atom");
    const double w = 1.0 / n;
    switch (ref.kind) {
        case ReferenceMeasure::Kind::CircleHaar: {
            std::vector<SphereAtom> atoms;
            for (int k = 0; k < n; ++k) atoms.push_back({SpherePoint::finite(std::polar(1.0, kTwoPi * (k + 0.5) * w)), w});
            return AtomicMeasure(std::move(atoms));
        }
        case ReferenceMeasure::Kind::ArcsineInterval: {
            std::vector<SphereAtom> atoms;
            for (int k = 0; k < n; ++k) {
                const double x = ref.lower + (ref.upper - ref.lower) * 0.5 * (1.0 - std::cos(std::numbers::pi * (k + 0.5) * w));
                atoms.push_back({SpherePoint::finite(x), w});
            }
            return AtomicMeasure(std::move(atoms));
        }
        case ReferenceMeasure::Kind::TorusHaar: {
            std::vector<TorusAtom> atoms;
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) atoms.push_back({TorusPoint(kTwoPi * (i + 0.5) * w, kTwoPi * (j + 0.5) * w), w * w});
            }
            return AtomicMeasure(std::move(atoms));
        }
        case ReferenceMeasure::Kind::Sampled:
            return ref.sample;
    }
    return {};
}

MeasureDistanceReport compare(const AtomicMeasure& mu, const ReferenceMeasure& ref, int bins, std::uint64_t seed,
                              int test_functions) {
    MeasureDistanceReport r;
    r.bins = bins;
    r.test_function_count = test_functions;
    r.binned_tv = binned_tv(mu, ref, bins);
    if (ref.kind == ReferenceMeasure::Kind::CircleHaar || ref.kind == ReferenceMeasure::Kind::ArcsineInterval) {
        r.ks_1d = ks_distance(mu, ref);
    }
    const int atoms = ref.kind == ReferenceMeasure::Kind::TorusHaar ? 64 : 4096;
    r.lipschitz_gap = lipschitz_gap(mu, reference_atoms(ref, atoms), seed, test_functions);
    return r;
}

}  // namespace holodyn
