#include "holodyn/core.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>

#include "holodyn/errors.hpp"
#include "holodyn/roots.hpp"

namespace holodyn {

namespace {

bool is_finite(Cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

Cplx int_power(Cplx z, int k) {
    Cplx r = 1.0;
    for (int i = 0; i < k; ++i) r *= z;
    return r;
}

// Horner evaluation of sum_j c[j] x^j and its derivative.
void horner(std::span<const Cplx> c, Cplx x, Cplx& value, Cplx& derivative) {
    value = 0.0;
    derivative = 0.0;
    for (std::size_t j = c.size(); j-- > 0;) {
        derivative = derivative * x + value;
        value = value * x + c[j];
    }
}

// Same with the coefficient order reversed: sum_j c[j] x^(D-j).
void horner_reversed(std::span<const Cplx> c, Cplx x, Cplx& value, Cplx& derivative) {
    value = 0.0;
    derivative = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j) {
        derivative = derivative * x + value;
        value = value * x + c[j];
    }
}

struct HomogeneousJet {
    Cplx value, d0, d1;
};

HomogeneousJet homogeneous_jet(std::span<const Cplx> c, Cplx z0, Cplx z1) {
    const int d = static_cast<int>(c.size()) - 1;
    HomogeneousJet out;
    Cplx v, dv;
    if (std::abs(z0) <= std::abs(z1)) {
        horner(c, z0 / z1, v, dv);
        const Cplx scale = int_power(z1, d - 1);
        out.value = scale * z1 * v;
        out.d0 = scale * dv;
        out.d1 = (static_cast<double>(d) * out.value - z0 * out.d0) / z1;
    } else {
        horner_reversed(c, z1 / z0, v, dv);
        const Cplx scale = int_power(z0, d - 1);
        out.value = scale * z0 * v;
        out.d1 = scale * dv;
        out.d0 = (static_cast<double>(d) * out.value - z1 * out.d1) / z0;
    }
    return out;
}

double sup_norm(std::span<const Cplx> c) {
    double m = 0.0;
    for (const Cplx& x : c) m = std::max(m, std::abs(x));
    return m;
}

// Derivative between local charts given the jet at a canonically normalized
// source point.
Cplx local_derivative(const MapJet& jet, Chart source, Chart target) {
    const Cplx dp = source == Chart::Affine ? jet.p0 : jet.p1;
    const Cplx dq = source == Chart::Affine ? jet.q0 : jet.q1;
    const Cplx denom = target == Chart::Affine ? jet.q : jet.p;
    const double scale = std::max(std::abs(jet.p), std::abs(jet.q));
    if (!(std::abs(denom) > 1e-14 * scale)) {
        throw Error(ErrorKind::ChartSingularity, "orbit point maps onto the pole of the target chart");
    }
    if (target == Chart::Affine) return (dp * jet.q - jet.p * dq) / (jet.q * jet.q);
    return (dq * jet.p - jet.q * dp) / (jet.p * jet.p);
}

}  // namespace

SpherePoint::SpherePoint(Cplx z0, Cplx z1) {
    if (!is_finite(z0) || !is_finite(z1)) {
        throw Error(ErrorKind::InvalidArgument, "non-finite homogeneous coordinates");
    }
    const double a0 = std::abs(z0), a1 = std::abs(z1);
    if (a0 == 0.0 && a1 == 0.0) throw Error(ErrorKind::InvalidArgument, "homogeneous pair (0, 0)");
    if (a1 >= a0) {
        z0_ = z0 / z1;
        z1_ = 1.0;
    } else {
        z0_ = 1.0;
        z1_ = z1 / z0;
    }
}

SpherePoint SpherePoint::from_chart(Chart chart, Cplx t) {
    return chart == Chart::Affine ? SpherePoint(t, 1.0) : SpherePoint(1.0, t);
}

Cplx SpherePoint::coordinate(Chart chart) const {
    const Cplx num = chart == Chart::Affine ? z0_ : z1_;
    const Cplx den = chart == Chart::Affine ? z1_ : z0_;
    if (den == Cplx(0.0)) {
        return {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    }
    return num / den;
}

std::array<double, 3> SpherePoint::embed() const {
    const double n0 = std::norm(z0_), n1 = std::norm(z1_);
    const double total = n0 + n1;
    const Cplx cross = z0_ * std::conj(z1_);
    return {2.0 * cross.real() / total, 2.0 * cross.imag() / total, (n0 - n1) / total};
}

bool canonical_less(const SpherePoint& a, const SpherePoint& b) {
    if (a.chart() != b.chart()) return a.chart() == Chart::Affine;
    const Cplx ta = a.local(), tb = b.local();
    if (ta.real() != tb.real()) return ta.real() < tb.real();
    return ta.imag() < tb.imag();
}

double chordal_distance(const SpherePoint& x, const SpherePoint& y) {
    const Cplx cross = x.z0() * y.z1() - x.z1() * y.z0();
    const double nx = std::sqrt(std::norm(x.z0()) + std::norm(x.z1()));
    const double ny = std::sqrt(std::norm(y.z0()) + std::norm(y.z1()));
    return std::min(1.0, std::abs(cross) / (nx * ny));
}

SphereMap SphereMap::from_coefficients(std::vector<Cplx> p, std::vector<Cplx> q) {
    if (p.size() != q.size()) throw Error(ErrorKind::InvalidMap, "p and q must have the same degree");
    if (p.size() < 2) throw Error(ErrorKind::InvalidMap, "degree must be at least 1");
    for (const auto* c : {&p, &q}) {
        for (const Cplx& x : *c) {
            if (!is_finite(x)) throw Error(ErrorKind::InvalidMap, "non-finite coefficient");
        }
    }
    const double np = sup_norm(p), nq = sup_norm(q);
    if (np == 0.0 || nq == 0.0) throw Error(ErrorKind::InvalidMap, "p or q vanishes identically");

    // Resultant check through its product formula: p must stay away from 0 on
    // every root of q.
    for (const SpherePoint& r : homogeneous_roots_raw(q)) {
        const double v = std::abs(homogeneous_eval(p, r.z0(), r.z1())) / np;
        if (v < kDegeneracyTolerance) {
            throw Error(ErrorKind::InvalidMap, "p and q share the root " + to_string(r));
        }
    }
    return SphereMap(std::move(p), std::move(q));
}

SphereMap SphereMap::identity() { return SphereMap({0.0, 1.0}, {1.0, 0.0}); }

SphereMap SphereMap::power(int d) {
    if (d < 1) throw Error(ErrorKind::InvalidMap, "power map degree must be >= 1");
    std::vector<Cplx> p(d + 1, 0.0), q(d + 1, 0.0);
    p[d] = 1.0;
    q[0] = 1.0;
    return SphereMap(std::move(p), std::move(q));
}

SphereMap SphereMap::chebyshev(int d) {
    if (d < 1) throw Error(ErrorKind::InvalidMap, "Chebyshev degree must be >= 1");
    // C_0 = 2, C_1 = z, C_{k+1} = z C_k - C_{k-1}
    std::vector<Cplx> prev{2.0}, cur{0.0, 1.0};
    for (int k = 1; k < d; ++k) {
        std::vector<Cplx> next(cur.size() + 1, 0.0);
        for (std::size_t j = 0; j < cur.size(); ++j) next[j + 1] += cur[j];
        for (std::size_t j = 0; j < prev.size(); ++j) next[j] -= prev[j];
        prev = std::move(cur);
        cur = std::move(next);
    }
    std::vector<Cplx> q(d + 1, 0.0);
    q[0] = 1.0;
    return SphereMap(std::move(cur), std::move(q));
}

SphereMap SphereMap::quadratic(Cplx c) {
    if (!is_finite(c)) throw Error(ErrorKind::InvalidMap, "non-finite parameter");
    return SphereMap({c, 0.0, 1.0}, {1.0, 0.0, 0.0});
}

std::pair<Cplx, Cplx> SphereMap::eval_pair(Cplx z0, Cplx z1) const {
    return {homogeneous_eval(p_, z0, z1), homogeneous_eval(q_, z0, z1)};
}

MapJet SphereMap::jet(Cplx z0, Cplx z1) const {
    const HomogeneousJet jp = homogeneous_jet(p_, z0, z1);
    const HomogeneousJet jq = homogeneous_jet(q_, z0, z1);
    return {jp.value, jq.value, jp.d0, jp.d1, jq.d0, jq.d1};
}

double SphereMap::coefficient_norm() const { return std::max(sup_norm(p_), sup_norm(q_)); }

Cplx homogeneous_eval(std::span<const Cplx> c, Cplx z0, Cplx z1) {
    const int d = static_cast<int>(c.size()) - 1;
    Cplx v, dv;
    if (std::abs(z0) <= std::abs(z1)) {
        horner(c, z0 / z1, v, dv);
        return int_power(z1, d) * v;
    }
    horner_reversed(c, z1 / z0, v, dv);
    return int_power(z0, d) * v;
}

SpherePoint eval_sphere(const SphereMap& f, const SpherePoint& x) {
    const auto [p, q] = f.eval_pair(x.z0(), x.z1());
    const double tol = kDegeneracyTolerance * f.coefficient_norm();
    if (std::abs(p) < tol && std::abs(q) < tol) {
        throw Error(ErrorKind::DegenerateImage, "p and q both vanish at " + to_string(x));
    }
    return SpherePoint(p, q);
}

SpherePoint eval_iterate(const SphereMap& f, const SpherePoint& x, int n) {
    SpherePoint y = x;
    for (int i = 0; i < n; ++i) y = eval_sphere(f, y);
    return y;
}

Cplx orbit_derivative(const SphereMap& f, const SpherePoint& x, int n, SpherePoint* image) {
    const Chart home = x.chart();
    SpherePoint cur = x;
    Cplx derivative = 1.0;
    for (int i = 0; i < n; ++i) {
        const MapJet jet = f.jet(cur.z0(), cur.z1());
        const double tol = kDegeneracyTolerance * f.coefficient_norm();
        if (std::abs(jet.p) < tol && std::abs(jet.q) < tol) {
            throw Error(ErrorKind::DegenerateImage, "orbit meets a common zero of p and q");
        }
        const SpherePoint next(jet.p, jet.q);
        const Chart target = (i == n - 1) ? home : next.chart();
        derivative *= local_derivative(jet, cur.chart(), target);
        cur = next;
    }
    if (image) *image = cur;
    return derivative;
}

Cplx multiplier(const SphereMap& f, const SpherePoint& x, int n, double fixed_point_tolerance) {
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "period must be positive");
    SpherePoint image;
    const Cplx m = orbit_derivative(f, x, n, &image);
    const double residual = chordal_distance(image, x);
    if (residual > fixed_point_tolerance) {
        throw Error(ErrorKind::NotPeriodic,
                    to_string(x) + " is not fixed by f^" + std::to_string(n) + " (residual " +
                        std::to_string(residual) + ")");
    }
    return m;
}

double spherical_derivative(const SphereMap& f, const SpherePoint& x) {
    const MapJet jet = f.jet(x.z0(), x.z1());
    const Cplx det = jet.p0 * jet.q1 - jet.p1 * jet.q0;
    const double source = std::norm(x.z0()) + std::norm(x.z1());
    const double target = std::norm(jet.p) + std::norm(jet.q);
    return std::abs(det) / f.degree() * source / target;
}

std::vector<Cplx> poly_multiply(std::span<const Cplx> a, std::span<const Cplx> b) {
    std::vector<Cplx> out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == Cplx(0.0)) continue;
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

std::vector<Cplx> partial_z0(std::span<const Cplx> c) {
    if (c.size() < 2) return {0.0};
    std::vector<Cplx> out(c.size() - 1);
    for (std::size_t j = 1; j < c.size(); ++j) out[j - 1] = static_cast<double>(j) * c[j];
    return out;
}

std::vector<Cplx> partial_z1(std::span<const Cplx> c) {
    if (c.size() < 2) return {0.0};
    const std::size_t d = c.size() - 1;
    std::vector<Cplx> out(d);
    for (std::size_t j = 0; j < d; ++j) out[j] = static_cast<double>(d - j) * c[j];
    return out;
}

SphereMap iterate_sphere(const SphereMap& f, int n, const IterateBudget& budget) {
    if (n < 0) throw Error(ErrorKind::InvalidArgument, "iterate count must be non-negative");
    const int d = f.degree();
    double log_degree = n * std::log(static_cast<double>(d));
    if (log_degree > std::log(static_cast<double>(budget.max_degree))) {
        throw Error(ErrorKind::PrecisionExhausted,
                    "degree " + std::to_string(d) + "^" + std::to_string(n) + " exceeds the iterate budget");
    }
    std::vector<Cplx> P{0.0, 1.0}, Q{1.0, 0.0};
    for (int step = 0; step < n; ++step) {
        std::vector<std::vector<Cplx>> powP{{1.0}}, powQ{{1.0}};
        for (int j = 1; j <= d; ++j) {
            powP.push_back(poly_multiply(powP.back(), P));
            powQ.push_back(poly_multiply(powQ.back(), Q));
        }
        const std::size_t size = (P.size() - 1) * d + 1;
        std::vector<Cplx> nextP(size, 0.0), nextQ(size, 0.0);
        for (int j = 0; j <= d; ++j) {
            if (f.p()[j] == Cplx(0.0) && f.q()[j] == Cplx(0.0)) continue;
            const std::vector<Cplx> term = poly_multiply(powP[j], powQ[d - j]);
            for (std::size_t k = 0; k < size; ++k) {
                nextP[k] += f.p()[j] * term[k];
                nextQ[k] += f.q()[j] * term[k];
            }
        }
        const double scale = std::max(sup_norm(nextP), sup_norm(nextQ));
        double smallest = std::numeric_limits<double>::infinity();
        for (auto* v : {&nextP, &nextQ}) {
            for (Cplx& c : *v) {
                c /= scale;
                if (c != Cplx(0.0)) smallest = std::min(smallest, std::abs(c));
            }
        }
        if (1.0 / smallest > budget.max_dynamic_range) {
            throw Error(ErrorKind::PrecisionExhausted,
                        "coefficient dynamic range exceeds the precision budget at step " + std::to_string(step + 1));
        }
        P = std::move(nextP);
        Q = std::move(nextQ);
    }
    return SphereMap(std::move(P), std::move(Q));
}

std::string to_string(const SpherePoint& x) {
    if (x.is_infinity()) return "inf";
    const Cplx z = x.affine();
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.12g%+.12gi", z.real(), z.imag());
    return buf;
}

}  // namespace holodyn
