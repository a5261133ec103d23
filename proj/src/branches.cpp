#include "holodyn/branches.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "holodyn/errors.hpp"
#include "holodyn/fibers.hpp"
#include "holodyn/rng.hpp"
#include "holodyn/roots.hpp"

namespace holodyn {

namespace {

constexpr double kFarCenter = 1e6;
constexpr double kOrbitMergeRadius = 1e-9;
constexpr std::int64_t kMaxLeaves = std::int64_t{1} << 24;

Chart disc_chart(const Disc& disc) {
    return std::abs(disc.center.affine()) <= kFarCenter ? Chart::Affine : Chart::Inverted;
}

std::int64_t int_pow(std::int64_t base, int exponent) {
    std::int64_t r = 1;
    for (int i = 0; i < exponent; ++i) r *= base;
    return r;
}

double loop_diameter(const std::vector<SpherePoint>& loop) {
    std::vector<std::array<double, 3>> emb;
    emb.reserve(loop.size());
    for (const SpherePoint& x : loop) emb.push_back(x.embed());
    double best = 0.0;
    for (std::size_t i = 0; i < emb.size(); ++i) {
        for (std::size_t j = i + 1; j < emb.size(); ++j) best = std::max(best, chordal_from_embedding(emb[i], emb[j]));
    }
    return best;
}

// Coordinate of x in the chart that sends b to 0 and the antipode of b to
// infinity (a rotation of the sphere, so it is orientation preserving).
Cplx centered(const SpherePoint& b, const SpherePoint& x) {
    const Cplx num = b.z1() * x.z0() - b.z0() * x.z1();
    const Cplx den = std::conj(b.z0()) * x.z0() + std::conj(b.z1()) * x.z1();
    return num / den;
}

// Winding number of a closed sample loop around b, counted in the chart that
// sends the antipode of the first sample to infinity.  That antipode lies
// outside every loop of chordal diameter below 1, so the count measures the
// small side.  A loop through b gives a sentinel that never equals a valid count.
int winding_number(const std::vector<SpherePoint>& loop, const SpherePoint& b) {
    const SpherePoint& base = loop.front();
    const Cplx w = centered(base, b);
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) return 0;
    double total = 0.0;
    Cplx prev = centered(base, loop.back()) - w;
    for (const SpherePoint& x : loop) {
        const Cplx cur = centered(base, x) - w;
        if (std::abs(cur) < 1e-300 || std::abs(prev) < 1e-300) return std::numeric_limits<int>::min();
        total += std::arg(cur / prev);
        prev = cur;
    }
    return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

struct Matcher {
    const SphereMap& f;
    const BranchOptions& options;

    // Assigns each current root the nearest new root; fails when the
    // assignment is not a bijection or any choice is ambiguous.
    bool match(const std::vector<SpherePoint>& current, const std::vector<SpherePoint>& roots,
               std::vector<SpherePoint>& out) const {
        const std::size_t d = current.size();
        std::vector<std::array<double, 3>> emb(d);
        for (std::size_t j = 0; j < d; ++j) emb[j] = roots[j].embed();
        std::vector<char> used(d, 0);
        out.assign(d, SpherePoint());
        for (std::size_t m = 0; m < d; ++m) {
            const auto e = current[m].embed();
            double best = std::numeric_limits<double>::infinity(), second = best;
            std::size_t arg = 0;
            for (std::size_t j = 0; j < d; ++j) {
                const double dist = chordal_from_embedding(e, emb[j]);
                if (dist < best) {
                    second = best;
                    best = dist;
                    arg = j;
                } else if (dist < second) {
                    second = dist;
                }
            }
            if (used[arg] || best > options.ambiguity_ratio * second) return false;
            used[arg] = 1;
            out[m] = roots[arg];
        }
        return true;
    }

    // Continues the roots over `from` to roots over `to`, halving the step
    // while the matching is ambiguous.
    std::vector<SpherePoint> advance(const SpherePoint& from, const SpherePoint& to,
                                     const std::vector<SpherePoint>& current, int level,
                                     const std::vector<SpherePoint>* known = nullptr) const {
        const std::vector<SpherePoint> roots = known ? *known : fiber_roots(f, to);
        std::vector<SpherePoint> out;
        if (match(current, roots, out)) return out;
        if (level >= options.max_subdivisions) {
            throw Error(ErrorKind::ContinuationAmbiguous,
                        "root matching unresolved near " + to_string(to) + " after " + std::to_string(level) +
                            " step halvings");
        }
        Chart chart = from.chart();
        if (std::abs(to.coordinate(chart)) > kFarCenter) chart = to.chart();
        const SpherePoint mid = SpherePoint::from_chart(chart, 0.5 * (from.coordinate(chart) + to.coordinate(chart)));
        const std::vector<SpherePoint> half = advance(from, mid, current, level + 1);
        return advance(mid, to, half, level + 1, &roots);
    }
};

// A loop can be lifted through f exactly when it encloses no critical value
// (depth 1); deeper orbit points only matter once they become critical values.
bool near_obstruction(const std::vector<SpherePoint>& loop, const ObstructionSet& obstruction, double kill_radius) {
    for (const ObstructionPoint& v : obstruction.points) {
        if (v.depth > 1) continue;
        for (const SpherePoint& x : loop) {
            if (chordal_distance(x, v.point) < kill_radius) return true;
        }
        if (winding_number(loop, v.point) != 0) return true;
    }
    return false;
}

}  // namespace

std::string_view to_string(BranchStatus status) {
    switch (status) {
        case BranchStatus::Alive: return "alive";
        case BranchStatus::Collided: return "collided";
        case BranchStatus::NearCritical: return "near_critical";
        case BranchStatus::NearIndeterminate: return "near_indeterminate";
    }
    return "unknown";
}

ObstructionSet critical_orbit(const SphereMap& f, int depth) {
    if (depth < 0 || depth > 60) throw Error(ErrorKind::InvalidArgument, "orbit depth must lie in [0, 60]");
    const std::vector<Cplx> a = poly_multiply(partial_z0(f.p()), partial_z1(f.q()));
    const std::vector<Cplx> b = poly_multiply(partial_z1(f.p()), partial_z0(f.q()));
    std::vector<Cplx> jacobian(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) jacobian[j] = a[j] - b[j];

    ObstructionSet out;
    out.depth = depth;
    for (const HomogeneousRoot& r : homogeneous_roots(jacobian)) out.critical_points.push_back(r.point);
    for (const SpherePoint& c : out.critical_points) {
        SpherePoint x = c;
        for (int j = 1; j <= depth; ++j) {
            x = eval_sphere(f, x);
            auto it = std::find_if(out.points.begin(), out.points.end(), [&](const ObstructionPoint& o) {
                return chordal_distance(o.point, x) <= kOrbitMergeRadius;
            });
            if (it == out.points.end()) {
                out.points.push_back({x, j});
            } else {
                it->depth = std::min(it->depth, j);
            }
        }
    }
    std::sort(out.points.begin(), out.points.end(),
              [](const ObstructionPoint& u, const ObstructionPoint& v) { return canonical_less(u.point, v.point); });
    return out;
}

bool disc_contains(const Disc& disc, const SpherePoint& x, double margin) {
    const Chart chart = disc_chart(disc);
    const Cplx t = x.coordinate(chart);
    if (!std::isfinite(t.real()) || !std::isfinite(t.imag())) return false;
    return std::abs(t - disc.center.coordinate(chart)) <= disc.radius * (1.0 - margin);
}

std::vector<BranchRecord> track_branches(const SphereMap& f, const Disc& disc, int n, std::uint64_t seed,
                                         const BranchOptions& options) {
    if (n < 0) throw Error(ErrorKind::InvalidArgument, "branch order must be non-negative");
    if (options.boundary_samples < 64) throw Error(ErrorKind::InvalidArgument, "at least 64 boundary samples required");
    if (!(disc.radius > 0.0)) throw Error(ErrorKind::InvalidArgument, "disc radius must be positive");
    const int d = f.degree();
    if (n * std::log(static_cast<double>(d)) > std::log(static_cast<double>(kMaxLeaves))) {
        throw Error(ErrorKind::AtomBudgetExceeded, "fiber tree of order " + std::to_string(n) + " is too large");
    }
    const ObstructionSet obstruction = critical_orbit(f, 1);
    const Matcher matcher{f, options};
    const std::size_t M = static_cast<std::size_t>(options.boundary_samples);

    BranchRecord root;
    root.target_order = n;
    root.map_degree = d;
    root.anchor = disc.center;
    root.chain = {disc.center};
    {
        Rng rng(seed);
        const double phase = rng.uniform() * 2.0 * std::numbers::pi / static_cast<double>(M);
        const Chart chart = disc_chart(disc);
        const Cplx c = disc.center.coordinate(chart);
        for (std::size_t k = 0; k < M; ++k) {
            const double angle = phase + 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(M);
            root.boundary_samples.push_back(SpherePoint::from_chart(chart, c + std::polar(disc.radius, angle)));
        }
    }
    root.diameters = {loop_diameter(root.boundary_samples)};

    std::vector<BranchRecord> records;
    std::vector<BranchRecord> frontier{std::move(root)};
    for (int depth = 0; depth < n; ++depth) {
        std::vector<BranchRecord> next;
        for (BranchRecord& parent : frontier) {
            auto kill = [&](BranchStatus status) {
                parent.order = depth + 1;
                parent.status = status;
                parent.leaf_weight = int_pow(d, n - depth);
                records.push_back(std::move(parent));
            };
            if (near_obstruction(parent.boundary_samples, obstruction, options.kill_radius)) {
                kill(BranchStatus::NearCritical);
                continue;
            }

            // lift the boundary loop through the d sheets
            const std::vector<SpherePoint> start = fiber_roots(f, parent.boundary_samples[0]);
            std::vector<std::vector<SpherePoint>> loops(static_cast<std::size_t>(d));
            for (int m = 0; m < d; ++m) loops[m].push_back(start[m]);
            std::vector<SpherePoint> current = start;
            for (std::size_t k = 1; k <= M; ++k) {
                const SpherePoint& from = parent.boundary_samples[k - 1];
                const SpherePoint& to = parent.boundary_samples[k % M];
                if (k == M) {
                    current = matcher.advance(from, to, current, 0, &start);
                } else {
                    current = matcher.advance(from, to, current, 0);
                    for (int m = 0; m < d; ++m) loops[m].push_back(current[m]);
                }
            }
            // every lifted loop must close up on its own starting root
            bool monodromy = false;
            for (int m = 0; m < d; ++m) monodromy |= !(current[m] == start[m]);
            if (monodromy) {
                kill(BranchStatus::NearCritical);
                continue;
            }

            const std::vector<SpherePoint> anchors = fiber_roots(f, parent.anchor);
            std::vector<int> owner(anchors.size(), -1);
            std::vector<int> tenants(static_cast<std::size_t>(d), 0);
            for (std::size_t j = 0; j < anchors.size(); ++j) {
                int hits = 0;
                for (int m = 0; m < d; ++m) {
                    if (winding_number(loops[m], anchors[j]) == 1) {
                        ++hits;
                        owner[j] = m;
                    }
                }
                if (hits != 1) owner[j] = -1;
                if (owner[j] >= 0) ++tenants[owner[j]];
            }
            for (std::size_t j = 0; j < anchors.size(); ++j) {
                BranchRecord child;
                child.order = depth + 1;
                child.target_order = n;
                child.map_degree = d;
                child.anchor = anchors[j];
                child.chain = parent.chain;
                child.chain.push_back(anchors[j]);
                child.diameters = parent.diameters;
                if (owner[j] < 0 || tenants[owner[j]] != 1) {
                    child.status = BranchStatus::Collided;
                    child.leaf_weight = int_pow(d, n - depth - 1);
                    records.push_back(std::move(child));
                    continue;
                }
                child.boundary_samples = loops[owner[j]];
                child.diameters.push_back(loop_diameter(child.boundary_samples));
                next.push_back(std::move(child));
            }
        }
        frontier = std::move(next);
    }
    for (BranchRecord& r : frontier) records.push_back(std::move(r));
    return records;
}

BranchStatistics branch_statistics(const std::vector<BranchRecord>& records, double epsilon) {
    if (records.empty()) throw Error(ErrorKind::InvalidArgument, "no branch records");
    const int d = records.front().map_degree;
    const int n = records.front().target_order;
    BranchStatistics s{};
    s.total = int_pow(d, n);
    s.bound = std::pow(1.0 / d + epsilon, 0.5 * n);
    std::int64_t within = 0;
    for (const BranchRecord& r : records) {
        if (r.status != BranchStatus::Alive) continue;
        s.alive += r.leaf_weight;
        const double diameter = r.diameters.back();
        s.max_diameter = std::max(s.max_diameter, diameter);
        if (diameter <= s.bound) within += r.leaf_weight;
    }
    s.survival_fraction = static_cast<double>(s.alive) / static_cast<double>(s.total);
    // vacuously satisfied when nothing survived
    s.size_bound_fraction = s.alive > 0 ? static_cast<double>(within) / static_cast<double>(s.alive) : 1.0;
    return s;
}

}  // namespace holodyn
