#include "holodyn/torus.hpp"

#include <cmath>
#include <numbers>

#include "holodyn/errors.hpp"

namespace holodyn {

namespace {

using i128 = __int128;

constexpr i128 kIntLimit = static_cast<i128>(1) << 62;

std::int64_t checked(i128 v) {
    if (v >= kIntLimit || v <= -kIntLimit) {
        throw Error(ErrorKind::PrecisionExhausted, "integer matrix entries exceed the 62-bit range");
    }
    return static_cast<std::int64_t>(v);
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// Returns g = gcd(a, b) >= 0 with a x + b y = g.
std::int64_t extended_gcd(std::int64_t a, std::int64_t b, std::int64_t& x, std::int64_t& y) {
    std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        const std::int64_t q = old_r / r;
        std::int64_t tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    x = old_s;
    y = old_t;
    return old_r;
}

}  // namespace

std::int64_t IntMatrix2::det() const { return checked(static_cast<i128>(a) * d - static_cast<i128>(b) * c); }

IntMatrix2 IntMatrix2::operator*(const IntMatrix2& o) const {
    return {checked(static_cast<i128>(a) * o.a + static_cast<i128>(b) * o.c),
            checked(static_cast<i128>(a) * o.b + static_cast<i128>(b) * o.d),
            checked(static_cast<i128>(c) * o.a + static_cast<i128>(d) * o.c),
            checked(static_cast<i128>(c) * o.b + static_cast<i128>(d) * o.d)};
}

IntMatrix2 matrix_power(const IntMatrix2& m, int n) {
    if (n < 0) throw Error(ErrorKind::InvalidArgument, "negative matrix power");
    IntMatrix2 result;
    for (int i = 0; i < n; ++i) result = result * m;
    return result;
}

HermiteForm column_hermite_form(const IntMatrix2& m) {
    if (m.det() == 0) throw Error(ErrorKind::InvalidArgument, "Hermite form of a singular matrix");
    std::int64_t x = 0, y = 0;
    const std::int64_t g = extended_gcd(m.a, m.b, x, y);
    IntMatrix2 u{x, -m.b / g, y, m.a / g};
    IntMatrix2 h = m * u;
    if (h.d < 0) {
        u.b = -u.b;
        u.d = -u.d;
        h = m * u;
    }
    const std::int64_t k = floor_div(h.c, h.d);
    u.a -= k * u.b;
    u.c -= k * u.d;
    h = m * u;
    return {h, u};
}

std::vector<std::array<std::int64_t, 2>> coset_representatives(const IntMatrix2& m) {
    const HermiteForm hf = column_hermite_form(m);
    std::vector<std::array<std::int64_t, 2>> reps;
    reps.reserve(static_cast<std::size_t>(hf.H.a * hf.H.d));
    for (std::int64_t i = 0; i < hf.H.a; ++i) {
        for (std::int64_t j = 0; j < hf.H.d; ++j) reps.push_back({i, j});
    }
    return reps;
}

double reduce_angle(double theta) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double r = std::fmod(theta, two_pi);
    if (r < 0.0) r += two_pi;
    if (r >= two_pi) r = 0.0;
    return r;
}

TorusPoint::TorusPoint(double t1, double t2) : theta1(reduce_angle(t1)), theta2(reduce_angle(t2)) {
    if (!std::isfinite(t1) || !std::isfinite(t2)) throw Error(ErrorKind::InvalidArgument, "non-finite angle");
}

double torus_distance(const TorusPoint& x, const TorusPoint& y) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    auto circ = [](double a, double b) {
        const double delta = std::fabs(a - b);
        return std::min(delta, two_pi - delta);
    };
    const double d1 = circ(x.theta1, y.theta1), d2 = circ(x.theta2, y.theta2);
    return std::sqrt(d1 * d1 + d2 * d2);
}

bool canonical_less(const TorusPoint& a, const TorusPoint& b) {
    if (a.theta1 != b.theta1) return a.theta1 < b.theta1;
    return a.theta2 < b.theta2;
}

TorusMap::TorusMap(const IntMatrix2& m) : m_(m) {
    if (m.det() == 0) throw Error(ErrorKind::InvalidMap, "monomial map requires det A != 0");
}

TorusPoint eval_torus(const TorusMap& f, const TorusPoint& x) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    const IntMatrix2& m = f.matrix();
    const double u1 = x.theta1 / two_pi, u2 = x.theta2 / two_pi;
    double v1 = static_cast<double>(m.a) * u1 + static_cast<double>(m.b) * u2;
    double v2 = static_cast<double>(m.c) * u1 + static_cast<double>(m.d) * u2;
    v1 -= std::floor(v1);
    v2 -= std::floor(v2);
    return TorusPoint(two_pi * v1, two_pi * v2);
}

std::array<std::complex<double>, 2> eigenvalues(const IntMatrix2& m) {
    const i128 tr = m.trace();
    const i128 det = m.det();
    const i128 disc = tr * tr - 4 * det;  // (lambda1 - lambda2)^2
    const double half_tr = static_cast<double>(tr) / 2.0;
    if (disc >= 0) {
        const double s = std::sqrt(static_cast<double>(disc)) / 2.0;
        const double big = half_tr >= 0.0 ? half_tr + s : half_tr - s;
        // the small root from the product, which avoids cancellation
        const double small = big != 0.0 ? static_cast<double>(det) / big : 0.0;
        return {std::complex<double>(big), std::complex<double>(small)};
    }
    const double s = std::sqrt(static_cast<double>(-disc)) / 2.0;
    return {std::complex<double>(half_tr, s), std::complex<double>(half_tr, -s)};
}

double spectral_radius(const IntMatrix2& m) { return std::abs(eigenvalues(m)[0]); }

std::string to_string(const IntMatrix2& m) {
    return "[[" + std::to_string(m.a) + "," + std::to_string(m.b) + "],[" + std::to_string(m.c) + "," +
           std::to_string(m.d) + "]]";
}

}  // namespace holodyn
