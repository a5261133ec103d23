#include "holodyn/roots.hpp"

#include <algorithm>
#include <numbers>
#include <numeric>

namespace holodyn {

namespace {

struct HornerResult {
    Cplx value, derivative;
    double magnitude;  // sum_j |c_j| |z|^j
};

HornerResult horner_abs(std::span<const Cplx> c, Cplx z) {
    HornerResult r{0.0, 0.0, 0.0};
    const double az = std::abs(z);
    for (std::size_t j = c.size(); j-- > 0;) {
        r.derivative = r.derivative * z + r.value;
        r.value = r.value * z + c[j];
        r.magnitude = r.magnitude * az + std::abs(c[j]);
    }
    return r;
}

std::vector<Cplx> quadratic_roots(Cplx c0, Cplx c1, Cplx c2) {
    const Cplx s = std::sqrt(c1 * c1 - 4.0 * c2 * c0);
    // pick the sign that avoids cancellation
    const Cplx big = std::real(std::conj(c1) * s) >= 0.0 ? c1 + s : c1 - s;
    if (big == Cplx(0.0)) return {0.0, 0.0};
    const Cplx qq = -0.5 * big;
    return {qq / c2, c0 / qq};
}

// Newton refinement in whichever chart keeps the root bounded.
SpherePoint polish(std::span<const Cplx> c, const SpherePoint& x) {
    const Chart chart = x.chart();
    std::vector<Cplx> local(c.begin(), c.end());
    if (chart == Chart::Inverted) std::reverse(local.begin(), local.end());
    Cplx t = x.local();
    HornerResult h = horner_abs(local, t);
    for (int it = 0; it < 3; ++it) {
        if (h.derivative == Cplx(0.0) || h.value == Cplx(0.0)) break;
        const Cplx candidate = t - h.value / h.derivative;
        const HornerResult hc = horner_abs(local, candidate);
        if (!(std::abs(hc.value) < std::abs(h.value))) break;
        t = candidate;
        h = hc;
    }
    return SpherePoint::from_chart(chart, t);
}

}  // namespace

std::vector<Cplx> circle_start(std::size_t count, double radius, double phase) {
    std::vector<Cplx> z(count);
    const double step = 2.0 * std::numbers::pi / static_cast<double>(count);
    for (std::size_t k = 0; k < count; ++k) z[k] = std::polar(radius, phase + step * static_cast<double>(k));
    return z;
}

std::vector<Cplx> polynomial_roots(std::span<const Cplx> c, const RootSolveOptions& opt) {
    if (c.empty() || c.back() == Cplx(0.0)) {
        throw Error(ErrorKind::InvalidArgument, "leading coefficient must be nonzero");
    }
    const std::size_t n = c.size() - 1;
    if (n == 0) return {};
    if (n == 1) return {-c[0] / c[1]};
    if (n == 2) return quadratic_roots(c[0], c[1], c[2]);

    double radius = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        if (c[k] == Cplx(0.0)) continue;
        radius = std::max(radius, std::pow(std::abs(c[k] / c[n]), 1.0 / static_cast<double>(n - k)));
    }
    if (radius == 0.0) return std::vector<Cplx>(n, 0.0);

    auto eval = [c](Cplx z) {
        const HornerResult h = horner_abs(c, z);
        const double residual = h.magnitude > 0.0 ? std::abs(h.value) / h.magnitude : 0.0;
        return NewtonStep{h.value / h.derivative, residual};
    };
    return aberth_solve(eval, circle_start(n, radius), opt);
}

std::vector<SpherePoint> homogeneous_roots_raw(std::span<const Cplx> c, const RootSolveOptions& opt) {
    double scale = 0.0;
    for (const Cplx& x : c) scale = std::max(scale, std::abs(x));
    if (scale == 0.0) throw Error(ErrorKind::InvalidArgument, "polynomial vanishes identically");
    const double tol = kDegeneracyTolerance * scale;
    const std::size_t degree = c.size() - 1;
    std::size_t lo = 0;
    while (lo <= degree && std::abs(c[lo]) <= tol) ++lo;
    std::size_t hi = degree;
    while (hi > lo && std::abs(c[hi]) <= tol) --hi;

    std::vector<SpherePoint> roots;
    roots.reserve(degree);
    for (std::size_t k = 0; k < lo; ++k) roots.push_back(SpherePoint::finite(0.0));
    if (hi > lo) {
        const std::vector<Cplx> middle(c.begin() + static_cast<std::ptrdiff_t>(lo),
                                       c.begin() + static_cast<std::ptrdiff_t>(hi) + 1);
        for (const Cplx& z : polynomial_roots(middle, opt)) roots.push_back(polish(c, SpherePoint::finite(z)));
    }
    for (std::size_t k = hi; k < degree; ++k) roots.push_back(SpherePoint::infinity());
    return roots;
}

std::vector<HomogeneousRoot> cluster_roots(std::span<const SpherePoint> roots, double radius) {
    const std::size_t n = roots.size();
    std::vector<std::array<double, 3>> emb(n);
    for (std::size_t i = 0; i < n; ++i) emb[i] = roots[i].embed();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return emb[a][0] < emb[b][0]; });

    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            const std::size_t i = order[a], j = order[b];
            if (emb[j][0] - emb[i][0] > 2.0 * radius) break;
            if (chordal_from_embedding(emb[i], emb[j]) <= radius) parent[find(i)] = find(j);
        }
    }

    std::vector<std::vector<std::size_t>> groups(n);
    for (std::size_t i = 0; i < n; ++i) groups[find(i)].push_back(i);
    std::vector<HomogeneousRoot> out;
    for (const auto& g : groups) {
        if (g.empty()) continue;
        if (g.size() == 1) {
            out.push_back({roots[g[0]], 1});
            continue;
        }
        const Chart chart = roots[g[0]].chart();
        Cplx sum = 0.0;
        for (std::size_t i : g) sum += roots[i].coordinate(chart);
        out.push_back({SpherePoint::from_chart(chart, sum / static_cast<double>(g.size())), static_cast<int>(g.size())});
    }
    std::sort(out.begin(), out.end(),
              [](const HomogeneousRoot& a, const HomogeneousRoot& b) { return canonical_less(a.point, b.point); });
    return out;
}

std::vector<HomogeneousRoot> homogeneous_roots(std::span<const Cplx> c, double cluster_radius) {
    const std::vector<SpherePoint> raw = homogeneous_roots_raw(c);
    return cluster_roots(raw, cluster_radius);
}

}  // namespace holodyn
