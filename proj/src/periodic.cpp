#include "holodyn/periodic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "holodyn/errors.hpp"
#include "holodyn/exceptional.hpp"
#include "holodyn/fibers.hpp"
#include "holodyn/roots.hpp"

namespace holodyn {

namespace {

using i128 = __int128;

constexpr double kPeriodicResidual = 1e-8;
constexpr double kMergeRadius = 1e-6;
constexpr double kParabolicWindow = 1e-3;  // |lambda - 1| below this allows merging close roots

// Fixed generic rotation (z0, z1) = (alpha t - conj(beta), beta t + conj(alpha));
// it moves the point at infinity of the t-line away from every periodic point
// of the oracle maps.
const Cplx kAlpha = std::polar(std::cos(0.61), 0.37);
const Cplx kBeta = std::polar(std::sin(0.61), 1.23);

// Evaluates G(t) = P_n(z) z1 - Q_n(z) z0 at z = z(t) along the orbit, with
// every intermediate pair rescaled.  Value and t-derivative share the scale,
// so the Newton correction is exact.
struct FixedPointForm {
    const SphereMap& f;
    int n;

    struct Value {
        Cplx g, dg;
        double log_scale;  // log of the factor separating g from the true value
        SpherePoint x, image;
    };

    Value operator()(Cplx z0, Cplx z1, Cplx dz0, Cplx dz1) const {
        const double s0 = 1.0 / std::max(std::abs(z0), std::abs(z1));
        z0 *= s0;
        z1 *= s0;
        dz0 *= s0;
        dz1 *= s0;
        const double d = static_cast<double>(f.degree());
        Cplx u0 = z0, u1 = z1, du0 = dz0, du1 = dz1;
        double log_scale = 0.0;
        for (int step = 0; step < n; ++step) {
            const MapJet j = f.jet(u0, u1);
            const Cplx dp = j.p0 * du0 + j.p1 * du1;
            const Cplx dq = j.q0 * du0 + j.q1 * du1;
            const double s = 1.0 / std::max(std::abs(j.p), std::abs(j.q));
            u0 = j.p * s;
            u1 = j.q * s;
            du0 = dp * s;
            du1 = dq * s;
            log_scale = d * log_scale + std::log(s);
        }
        Value v;
        v.g = u0 * z1 - u1 * z0;
        v.dg = du0 * z1 + u0 * dz1 - du1 * z0 - u1 * dz0;
        // G is homogeneous of degree d^n + 1 in the source pair
        v.log_scale = log_scale + (std::pow(d, n) + 1.0) * std::log(s0);
        v.x = SpherePoint(z0, z1);
        v.image = SpherePoint(u0, u1);
        return v;
    }

    Value at(Cplx t) const { return (*this)(kAlpha * t - std::conj(kBeta), kBeta * t + std::conj(kAlpha), kAlpha, kBeta); }

    double log_abs(Cplx z0, Cplx z1) const {
        const Value v = (*this)(z0, z1, 0.0, 0.0);
        return std::log(std::abs(v.g)) - v.log_scale;
    }
};

SpherePoint from_t(Cplx t) { return SpherePoint(kAlpha * t - std::conj(kBeta), kBeta * t + std::conj(kAlpha)); }

Cplx to_t(const SpherePoint& x) {
    return (std::conj(kAlpha) * x.z0() + std::conj(kBeta) * x.z1()) / (kAlpha * x.z1() - kBeta * x.z0());
}

// Starting guesses spread like the periodic points: the n-th preimages of a
// generic target, plus one point on the geometric-mean circle.  Falls back to
// the plain circle when the targets are degenerate.
std::vector<Cplx> start_points(const SphereMap& f, int n, std::size_t count, double radius) {
    for (const Cplx target : {Cplx(0.37, 0.21), Cplx(-1.3, 0.7), Cplx(0.11, -2.9)}) {
        std::vector<SpherePoint> level{SpherePoint::finite(target)};
        try {
            for (int i = 0; i < n; ++i) {
                std::vector<SpherePoint> next;
                next.reserve(level.size() * static_cast<std::size_t>(f.degree()));
                for (const SpherePoint& y : level) {
                    for (const SpherePoint& x : fiber_roots(f, y)) next.push_back(x);
                }
                level = std::move(next);
            }
        } catch (const Error&) {
            continue;
        }
        std::vector<Cplx> z;
        z.reserve(count);
        for (const SpherePoint& x : level) {
            const Cplx t = to_t(x);
            if (std::isfinite(t.real()) && std::isfinite(t.imag())) z.push_back(t);
        }
        std::sort(z.begin(), z.end(), [](Cplx a, Cplx b) { return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag(); });
        bool distinct = z.size() + 1 == count;
        for (std::size_t i = 1; distinct && i < z.size(); ++i) distinct = std::abs(z[i] - z[i - 1]) > 1e-12 * std::max(1.0, std::abs(z[i]));
        if (!distinct) continue;
        z.push_back(std::polar(radius, 0.4));
        return z;
    }
    return circle_start(count, radius);
}

std::vector<SpherePoint> support_samples(const SphereMap& f, const PeriodicOptions& options) {
    const ExceptionalSet E = find_exceptional(f);
    for (const Cplx start : {Cplx(0.37, 0.21), Cplx(-1.3, 0.7), Cplx(0.11, -2.9)}) {
        const SpherePoint a = SpherePoint::finite(start);
        if (E.contains(a, 1e-3)) continue;
        const AtomicMeasure mu = sample_equilibrium(f, a, options.support_burn_in, options.support_samples, options.seed);
        std::vector<SpherePoint> out;
        for (const SphereAtom& atom : mu.sphere_atoms()) out.push_back(atom.point);
        return out;
    }
    throw Error(ErrorKind::ExceptionalStart, "no admissible start for support sampling");
}

std::int64_t mod_positive(i128 a, std::int64_t m) {
    i128 r = a % m;
    if (r < 0) r += m;
    return static_cast<std::int64_t>(r);
}

}  // namespace

std::string_view to_string(Classification c) {
    switch (c) {
        case Classification::Repelling: return "repelling";
        case Classification::Attracting: return "attracting";
        case Classification::Indifferent: return "indifferent";
        case Classification::Superattracting: return "superattracting";
    }
    return "unknown";
}

Classification classify(const std::vector<Cplx>& eigenvalues) {
    bool all_repelling = true, all_super = true, any_neutral = false;
    for (const Cplx& l : eigenvalues) {
        const double m = std::abs(l);
        all_repelling &= m > 1.0 + kClassificationTolerance;
        all_super &= m <= kSuperattractingTolerance;
        any_neutral |= std::fabs(m - 1.0) <= kClassificationTolerance;
    }
    if (all_repelling) return Classification::Repelling;
    if (all_super) return Classification::Superattracting;
    if (any_neutral) return Classification::Indifferent;
    return Classification::Attracting;
}

double PeriodicPoint::min_modulus() const {
    double m = std::numeric_limits<double>::infinity();
    for (const Cplx& l : multipliers) m = std::min(m, std::abs(l));
    return m;
}

std::vector<PeriodicPoint> periodic_algebraic(const SphereMap& f, int n, const PeriodicOptions& options) {
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "period must be positive");
    const int d = f.degree();
    const double degree = std::pow(static_cast<double>(d), n) + 1.0;
    if (degree > static_cast<double>(options.degree_budget)) {
        throw Error(ErrorKind::PrecisionExhausted, "fixed-point polynomial of degree " + std::to_string(degree) +
                                                       " exceeds the budget of " +
                                                       std::to_string(options.degree_budget));
    }
    const std::size_t N = static_cast<std::size_t>(degree);
    const FixedPointForm form{f, n};

    // geometric mean of the root moduli from the end coefficients G(0), lead(G)
    const double log_low = form.log_abs(-std::conj(kBeta), std::conj(kAlpha));
    const double log_high = form.log_abs(kAlpha, kBeta);
    double radius = std::exp((log_low - log_high) / static_cast<double>(N));
    if (!std::isfinite(radius) || radius <= 0.0) radius = 1.0;

    auto eval = [&](Cplx t) {
        const FixedPointForm::Value v = form.at(t);
        const Cplx correction = v.g / v.dg;
        return NewtonStep{correction, chordal_distance(v.image, v.x)};
    };
    RootSolveOptions solve;
    solve.residual_tolerance = kPeriodicResidual;
    solve.converged_residual = 1e-16;
    solve.step_tolerance = 1e-13;
    solve.max_sweeps = 1000;
    const std::vector<Cplx> ts = aberth_solve(eval, start_points(f, n, N, radius), solve);

    struct Candidate {
        SpherePoint x;
        Cplx lambda;
    };
    std::vector<Candidate> cand;
    cand.reserve(N);
    for (const Cplx& t : ts) {
        const SpherePoint x = from_t(t);
        cand.push_back({x, orbit_derivative(f, x, n)});
    }

    // merge only clusters that are genuinely multiple (multiplier near 1);
    // distinct simple roots can sit closer than the merge radius
    std::vector<std::size_t> parent(N);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (std::size_t i = 0; i < N; ++i) {
        if (std::abs(cand[i].lambda - 1.0) > kParabolicWindow) continue;
        for (std::size_t j = i + 1; j < N; ++j) {
            if (std::abs(cand[j].lambda - 1.0) > kParabolicWindow) continue;
            if (chordal_distance(cand[i].x, cand[j].x) <= kMergeRadius) parent[find(i)] = find(j);
        }
    }
    std::vector<std::vector<std::size_t>> groups(N);
    for (std::size_t i = 0; i < N; ++i) groups[find(i)].push_back(i);

    std::vector<PeriodicPoint> out;
    for (const auto& g : groups) {
        if (g.empty()) continue;
        SpherePoint x = cand[g[0]].x;
        if (g.size() > 1) {
            const Chart chart = x.chart();
            Cplx sum = 0.0;
            for (std::size_t i : g) sum += cand[i].x.coordinate(chart);
            x = SpherePoint::from_chart(chart, sum / static_cast<double>(g.size()));
        }
        PeriodicPoint p;
        p.point = x;
        p.period = n;
        p.multiplicity = static_cast<int>(g.size());
        p.multipliers = {multiplier(f, x, n, kPeriodicResidual)};
        p.classification = classify(p.multipliers);
        out.push_back(std::move(p));
    }

    if (options.test_support) {
        std::vector<std::array<double, 3>> samples;
        for (const SpherePoint& s : support_samples(f, options)) samples.push_back(s.embed());
        for (PeriodicPoint& p : out) {
            const auto e = p.sphere().embed();
            p.on_support = std::any_of(samples.begin(), samples.end(), [&](const std::array<double, 3>& s) {
                return chordal_from_embedding(e, s) <= options.support_radius;
            });
        }
    }
    std::sort(out.begin(), out.end(),
              [](const PeriodicPoint& a, const PeriodicPoint& b) { return canonical_less(a.sphere(), b.sphere()); });
    return out;
}

std::vector<PeriodicPoint> periodic_via_branches(const SphereMap& f, int n, const std::vector<Disc>& balls,
                                                 std::uint64_t seed, const BranchOptions& options) {
    if (n < 0) throw Error(ErrorKind::InvalidArgument, "period must be non-negative");
    if (n == 0) return {};
    std::vector<PeriodicPoint> found;
    for (std::size_t b = 0; b < balls.size(); ++b) {
        const Disc& ball = balls[b];
        for (const BranchRecord& r : track_branches(f, ball, n, seed + b, options)) {
            if (r.status != BranchStatus::Alive) continue;
            const bool inside = std::all_of(r.boundary_samples.begin(), r.boundary_samples.end(),
                                            [&](const SpherePoint& x) { return disc_contains(ball, x); });
            if (!inside) continue;

            // the branch map, continued by staying next to the recorded chain
            auto branch = [&](SpherePoint w) {
                for (int i = 1; i <= n; ++i) {
                    const std::vector<SpherePoint> roots = fiber_roots(f, w);
                    w = *std::min_element(roots.begin(), roots.end(), [&](const SpherePoint& u, const SpherePoint& v) {
                        return chordal_distance(u, r.chain[i]) < chordal_distance(v, r.chain[i]);
                    });
                }
                return w;
            };
            SpherePoint z = r.anchor;
            for (int it = 0; it < 100; ++it) {
                const SpherePoint next = branch(z);
                const double step = chordal_distance(next, z);
                z = next;
                if (step < 1e-15) break;
            }
            // Newton on f^n(z) = z in the chart of z
            for (int it = 0; it < 8; ++it) {
                SpherePoint image;
                const Cplx lambda = orbit_derivative(f, z, n, &image);
                const Chart chart = z.chart();
                const Cplx t = z.local();
                const Cplx step = (image.coordinate(chart) - t) / (lambda - 1.0);
                if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
                z = SpherePoint::from_chart(chart, t + step);
                if (std::abs(step) < 1e-16) break;
            }
            Cplx lambda;
            try {
                lambda = multiplier(f, z, n, kPeriodicResidual);
            } catch (const Error& e) {
                if (e.kind() == ErrorKind::NotPeriodic) continue;
                throw;
            }
            PeriodicPoint p;
            p.point = z;
            p.period = n;
            p.multipliers = {lambda};
            p.classification = classify(p.multipliers);
            p.on_support = true;
            if (p.classification == Classification::Repelling) found.push_back(std::move(p));
        }
    }
    if (found.empty()) throw Error(ErrorKind::NoBranchSurvived, "no inverse branch maps a ball into itself");

    std::sort(found.begin(), found.end(),
              [](const PeriodicPoint& a, const PeriodicPoint& b) { return canonical_less(a.sphere(), b.sphere()); });
    std::vector<PeriodicPoint> out;
    for (PeriodicPoint& p : found) {
        const bool duplicate = std::any_of(out.begin(), out.end(), [&](const PeriodicPoint& q) {
            return chordal_distance(q.sphere(), p.sphere()) <= kMergeRadius;
        });
        if (!duplicate) out.push_back(std::move(p));
    }
    return out;
}

void for_each_torus_periodic(const TorusMap& f, int n,
                             const std::function<void(std::int64_t, std::int64_t, std::int64_t)>& visit) {
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "period must be positive");
    const IntMatrix2 b = matrix_power(f.matrix(), n).minus_identity();
    const std::int64_t det = b.det();
    if (det == 0) {
        throw Error(ErrorKind::DegeneratePeriod, "A^" + std::to_string(n) + " - I is singular (an eigenvalue is a root of unity)");
    }
    // u = B^{-1} k = sign(det) adj(B) k / |det B|
    const std::int64_t den = std::llabs(det);
    const i128 sign = det > 0 ? 1 : -1;
    const IntMatrix2 adj = b.adjugate();
    const std::int64_t step1 = mod_positive(sign * adj.b, den), step2 = mod_positive(sign * adj.d, den);
    const HermiteForm hf = column_hermite_form(b);
    for (std::int64_t i = 0; i < hf.H.a; ++i) {
        std::int64_t num1 = mod_positive(sign * adj.a * i, den);
        std::int64_t num2 = mod_positive(sign * adj.c * i, den);
        for (std::int64_t j = 0; j < hf.H.d; ++j) {
            visit(num1, num2, den);
            num1 += step1;
            if (num1 >= den) num1 -= den;
            num2 += step2;
            if (num2 >= den) num2 -= den;
        }
    }
}

TorusPeriodicResult periodic_torus(const TorusMap& f, int n, std::int64_t point_budget) {
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "period must be positive");
    const IntMatrix2 b = matrix_power(f.matrix(), n).minus_identity();
    const std::int64_t det = b.det();
    if (det == 0) {
        throw Error(ErrorKind::DegeneratePeriod, "A^" + std::to_string(n) + " - I is singular (an eigenvalue is a root of unity)");
    }
    TorusPeriodicResult out;
    out.count = std::llabs(det);
    for (const Cplx& l : eigenvalues(f.matrix())) out.multipliers.push_back(std::pow(l, n));
    out.classification = classify(out.multipliers);
    if (out.count > point_budget) return out;
    out.enumerated = true;
    out.points.reserve(static_cast<std::size_t>(out.count));
    const double two_pi = 2.0 * std::numbers::pi;
    for_each_torus_periodic(f, n, [&](std::int64_t a, std::int64_t c, std::int64_t den) {
        PeriodicPoint p;
        p.point = TorusPoint(two_pi * static_cast<double>(a) / static_cast<double>(den),
                             two_pi * static_cast<double>(c) / static_cast<double>(den));
        p.period = n;
        p.multipliers = out.multipliers;
        p.classification = out.classification;
        p.on_support = true;
        out.points.push_back(std::move(p));
    });
    std::sort(out.points.begin(), out.points.end(),
              [](const PeriodicPoint& x, const PeriodicPoint& y) { return canonical_less(x.torus(), y.torus()); });
    return out;
}

std::vector<double> torus_periodic_histogram(const TorusMap& f, int n, int bins) {
    if (bins < 1) throw Error(ErrorKind::InvalidArgument, "bins must be positive");
    const double normalizer = std::pow(static_cast<double>(std::llabs(f.matrix().det())), n);
    std::vector<std::int64_t> counts(static_cast<std::size_t>(bins) * bins, 0);
    for_each_torus_periodic(f, n, [&](std::int64_t a, std::int64_t c, std::int64_t den) {
        const auto i = static_cast<std::size_t>(static_cast<i128>(a) * bins / den);
        const auto j = static_cast<std::size_t>(static_cast<i128>(c) * bins / den);
        ++counts[i * static_cast<std::size_t>(bins) + j];
    });
    std::vector<double> mass(counts.size());
    for (std::size_t k = 0; k < counts.size(); ++k) mass[k] = static_cast<double>(counts[k]) / normalizer;
    return mass;
}

AtomicMeasure periodic_measure(const std::vector<PeriodicPoint>& points, PeriodicFilter filter, double normalizer) {
    if (!(normalizer > 0.0)) throw Error(ErrorKind::InvalidArgument, "normalizer must be positive");
    auto keep = [&](const PeriodicPoint& p) {
        switch (filter) {
            case PeriodicFilter::All: return true;
            case PeriodicFilter::Repelling: return p.classification == Classification::Repelling;
            case PeriodicFilter::RepellingOnSupport:
                return p.classification == Classification::Repelling && p.on_support;
        }
        return false;
    };
    auto weight = [&](const PeriodicPoint& p) {
        return (filter == PeriodicFilter::All ? p.multiplicity : 1) / normalizer;
    };
    if (points.empty()) return AtomicMeasure();
    const bool sphere = std::holds_alternative<SpherePoint>(points.front().point);
    std::vector<SphereAtom> sphere_atoms;
    std::vector<TorusAtom> torus_atoms;
    for (const PeriodicPoint& p : points) {
        if (std::holds_alternative<SpherePoint>(p.point) != sphere) {
            throw Error(ErrorKind::SpaceMismatch, "periodic points from different spaces");
        }
        if (!keep(p)) continue;
        if (sphere) {
            sphere_atoms.push_back({p.sphere(), weight(p)});
        } else {
            torus_atoms.push_back({p.torus(), weight(p)});
        }
    }
    AtomicMeasure mu = sphere ? AtomicMeasure(std::move(sphere_atoms)) : AtomicMeasure(std::move(torus_atoms));
    mu.canonicalize();
    return mu;
}

}  // namespace holodyn
