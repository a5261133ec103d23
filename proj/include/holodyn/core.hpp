#pragma once

// Numerical kernel for rational self-maps of the Riemann sphere.
//
// Points are homogeneous pairs [z0 : z1] kept in a canonical form: the
// larger component (in modulus) is exactly 1.  A map is a pair (p, q) of
// homogeneous polynomials of the same degree d, stored as coefficient
// vectors c[0..d] with p(z0, z1) = sum_j c[j] z0^j z1^(d-j), so that the
// affine form is p(z, 1) = sum_j c[j] z^j.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace holodyn {

using Cplx = std::complex<double>;

inline constexpr double kDegeneracyTolerance = 1e-10;
inline constexpr double kFixedPointTolerance = 1e-8;

enum class Chart { Affine, Inverted };  // t = z0/z1 or t = z1/z0

class SpherePoint {
public:
    SpherePoint() : z0_(0.0), z1_(1.0) {}
    SpherePoint(Cplx z0, Cplx z1);

    static SpherePoint finite(Cplx z) { return SpherePoint(z, 1.0); }
    static SpherePoint infinity() { return SpherePoint(1.0, 0.0); }
    static SpherePoint from_chart(Chart chart, Cplx t);

    Cplx z0() const { return z0_; }
    Cplx z1() const { return z1_; }

    // Chart in which the point has coordinate of modulus <= 1.
    Chart chart() const { return z1_ == Cplx(1.0) ? Chart::Affine : Chart::Inverted; }
    // Coordinate in the point's own chart (modulus <= 1).
    Cplx local() const { return chart() == Chart::Affine ? z0_ : z1_; }
    // Coordinate in a given chart; may be infinite.
    Cplx coordinate(Chart chart) const;

    bool is_infinity() const { return z1_ == Cplx(0.0); }
    // z0/z1; infinite at the pole.
    Cplx affine() const { return coordinate(Chart::Affine); }

    // Position on the unit sphere under inverse stereographic projection.
    std::array<double, 3> embed() const;

    friend bool operator==(const SpherePoint&, const SpherePoint&) = default;

private:
    Cplx z0_;
    Cplx z1_;
};

// Total order used for canonical output ordering.
bool canonical_less(const SpherePoint& a, const SpherePoint& b);

// |z0 w1 - z1 w0| / (|x| |y|), in [0, 1].
double chordal_distance(const SpherePoint& x, const SpherePoint& y);

// Fast chordal distance between two embedded points.
inline double chordal_from_embedding(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
    return 0.5 * std::sqrt(dx * dx + dy * dy + dz * dz);
}

// Values and first partials of the pair (p, q) at a homogeneous point.
struct MapJet {
    Cplx p, q;
    Cplx p0, p1;  // dp/dz0, dp/dz1
    Cplx q0, q1;  // dq/dz0, dq/dz1
};

struct IterateBudget {
    long max_degree = 1L << 16;
    double max_dynamic_range = 1e14;
};

class SphereMap {
public:
    // Validates that p and q have equal degree d >= 1 and no common root.
    static SphereMap from_coefficients(std::vector<Cplx> p, std::vector<Cplx> q);

    static SphereMap identity();
    static SphereMap power(int d);               // z^d
    static SphereMap chebyshev(int d = 2);       // 2 T_d(z / 2); d = 2 gives z^2 - 2
    static SphereMap quadratic(Cplx c);          // z^2 + c

    int degree() const { return static_cast<int>(p_.size()) - 1; }
    const std::vector<Cplx>& p() const { return p_; }
    const std::vector<Cplx>& q() const { return q_; }

    // Unnormalized homogeneous image of the pair (z0, z1).
    std::pair<Cplx, Cplx> eval_pair(Cplx z0, Cplx z1) const;
    MapJet jet(Cplx z0, Cplx z1) const;

    // Largest coefficient modulus over p and q.
    double coefficient_norm() const;

private:
    friend SphereMap iterate_sphere(const SphereMap&, int, const IterateBudget&);
    SphereMap(std::vector<Cplx> p, std::vector<Cplx> q) : p_(std::move(p)), q_(std::move(q)) {}

    std::vector<Cplx> p_;
    std::vector<Cplx> q_;
};

// [p(x) : q(x)], renormalized.  Throws DegenerateImage near indeterminacy.
SpherePoint eval_sphere(const SphereMap& f, const SpherePoint& x);

// f^n(x) by repeated evaluation.
SpherePoint eval_iterate(const SphereMap& f, const SpherePoint& x, int n);

// Derivative of f^n at a fixed point x of f^n, computed in the chart where
// x has coordinate of modulus <= 1 by the chain rule along the orbit.
Cplx multiplier(const SphereMap& f, const SpherePoint& x, int n,
                double fixed_point_tolerance = kFixedPointTolerance);

// Derivative of f^n at x without the periodicity check; the source chart is
// the chart of x and the target chart is the chart of x as well.
Cplx orbit_derivative(const SphereMap& f, const SpherePoint& x, int n, SpherePoint* image = nullptr);

// Spherical derivative |det DF| / d * |z|^2 / |F(z)|^2 (chart independent).
double spherical_derivative(const SphereMap& f, const SpherePoint& x);

// Homogeneous composition f o ... o f with per-step sup-norm rescaling.
SphereMap iterate_sphere(const SphereMap& f, int n, const IterateBudget& budget = {});

// Coefficients of dp/dz0 and dp/dz1 for a homogeneous polynomial.
std::vector<Cplx> partial_z0(std::span<const Cplx> c);
std::vector<Cplx> partial_z1(std::span<const Cplx> c);
// Product of homogeneous polynomials (degrees add).
std::vector<Cplx> poly_multiply(std::span<const Cplx> a, std::span<const Cplx> b);

// Homogeneous evaluation of sum_j c[j] z0^j z1^(deg - j).
Cplx homogeneous_eval(std::span<const Cplx> c, Cplx z0, Cplx z1);

std::string to_string(const SpherePoint& x);

}  // namespace holodyn
