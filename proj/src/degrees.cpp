#include "holodyn/degrees.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "holodyn/errors.hpp"

namespace holodyn {

namespace {

DegreeProfile finish(std::vector<double> degrees) {
    DegreeProfile out;
    out.topological = degrees.back();
    const double lower = *std::max_element(degrees.begin(), degrees.end() - 1);
    out.dominant = out.topological > lower;
    if (out.dominant) out.lyapunov_floor = 0.5 * std::log(out.topological / degrees[degrees.size() - 2]);
    out.degrees = std::move(degrees);
    return out;
}

}  // namespace

bool DegreeProfile::log_concave() const {
    for (std::size_t p = 1; p + 1 < degrees.size(); ++p) {
        const double lhs = degrees[p] * degrees[p];
        const double rhs = degrees[p - 1] * degrees[p + 1];
        if (lhs < rhs * (1.0 - 1e-12)) return false;
    }
    return true;
}

DegreeProfile profile_sphere(const SphereMap& f) { return finish({1.0, static_cast<double>(f.degree())}); }

DegreeProfile profile_torus(const TorusMap& f) {
    const IntMatrix2& m = f.matrix();
    return finish({1.0, spectral_radius(m), static_cast<double>(std::llabs(m.det()))});
}

std::vector<double> verify_degree_growth(const TorusMap& f, int p, int n_max) {
    if (p != 1 && p != 2) throw Error(ErrorKind::InvalidArgument, "degree index p must be 1 or 2");
    if (n_max < 1 || n_max > 40) throw Error(ErrorKind::InvalidArgument, "n_max must lie in [1, 40]");
    const IntMatrix2& a = f.matrix();
    std::vector<double> roots;
    roots.reserve(n_max);
    if (p == 2) {
        // |det A^n| = |det A|^n
        roots.assign(n_max, static_cast<double>(std::llabs(a.det())));
        return roots;
    }
    // Powers in floating point with a running log scale.
    double m00 = 1.0, m01 = 0.0, m10 = 0.0, m11 = 1.0, log_scale = 0.0;
    for (int n = 1; n <= n_max; ++n) {
        const double n00 = a.a * m00 + a.b * m10, n01 = a.a * m01 + a.b * m11;
        const double n10 = a.c * m00 + a.d * m10, n11 = a.c * m01 + a.d * m11;
        const double s = std::max({std::fabs(n00), std::fabs(n01), std::fabs(n10), std::fabs(n11)});
        m00 = n00 / s;
        m01 = n01 / s;
        m10 = n10 / s;
        m11 = n11 / s;
        log_scale += std::log(s);
        // largest singular value of the scaled matrix
        const double fro2 = m00 * m00 + m01 * m01 + m10 * m10 + m11 * m11;
        const double det = m00 * m11 - m01 * m10;
        const double sigma = std::sqrt(0.5 * (fro2 + std::sqrt(std::max(0.0, fro2 * fro2 - 4.0 * det * det))));
        roots.push_back(std::exp((log_scale + std::log(sigma)) / n));
    }
    return roots;
}

}  // namespace holodyn
