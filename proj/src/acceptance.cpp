#include "holodyn/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <numbers>

#include "holodyn/branches.hpp"
#include "holodyn/degrees.hpp"
#include "holodyn/errors.hpp"
#include "holodyn/exceptional.hpp"
#include "holodyn/fibers.hpp"
#include "holodyn/io.hpp"
#include "holodyn/lyapunov.hpp"
#include "holodyn/measures.hpp"
#include "holodyn/parallel.hpp"
#include "holodyn/periodic.hpp"
#include "holodyn/rng.hpp"

namespace holodyn {

namespace {

using Tables = std::vector<std::pair<std::string, std::string>>;

struct Context {
    std::uint64_t seed;
    int threads;
    Tables tables;
};

std::string fmt(double x) { return format_number(x); }

CriterionResult backward_equidistribution(Context& ctx) {
    CriterionResult r{1, "backward-orbit equidistribution", false, ""};
    CsvTable t({"map", "n", "atoms", "binned_tv", "ks", "lipschitz_gap"});
    const SphereMap cheb = SphereMap::chebyshev();
    const ReferenceMeasure arcsine = ReferenceMeasure::arcsine();
    std::vector<double> tv;
    for (int n : {10, 12, 14}) {
        const AtomicMeasure mu = pullback_measure(cheb, SpherePoint::finite(0.3), n);
        const MeasureDistanceReport rep = compare(mu, arcsine, 32, ctx.seed);
        tv.push_back(rep.binned_tv);
        t.add_row({"z^2-2", std::to_string(n), std::to_string(mu.size()), fmt(rep.binned_tv), fmt(*rep.ks_1d),
                   fmt(rep.lipschitz_gap)});
    }
    const SphereMap sq = SphereMap::power(2);
    const AtomicMeasure nu = pullback_measure(sq, SpherePoint::finite(Cplx(1.0, 0.3)), 14);
    const MeasureDistanceReport rep = compare(nu, ReferenceMeasure::circle_haar(), 32, ctx.seed);
    t.add_row({"z^2", "14", std::to_string(nu.size()), fmt(rep.binned_tv), fmt(*rep.ks_1d), fmt(rep.lipschitz_gap)});
    ctx.tables.emplace_back("crit1_backward.csv", t.str());

    const bool monotone = tv[1] <= tv[0] + 0.01 && tv[2] <= tv[1] + 0.01;
    r.passed = tv[2] <= 0.06 && monotone && *rep.ks_1d <= 0.03;
    r.detail = "tv(10,12,14) = " + fmt(tv[0]) + ", " + fmt(tv[1]) + ", " + fmt(tv[2]) + "; ks(z^2, n=14) = " +
               fmt(*rep.ks_1d);
    return r;
}

CriterionResult exceptional_obstruction(Context& ctx) {
    CriterionResult r{2, "exceptional obstruction", true, ""};
    CsvTable t({"n", "atoms", "mass_at_0", "binned_tv"});
    const SphereMap sq = SphereMap::power(2);
    const SpherePoint zero = SpherePoint::finite(0.0);
    double worst = 1.0;
    for (int n = 0; n <= 14; ++n) {
        const AtomicMeasure mu = pullback_measure(sq, zero, n);
        double at_zero = 0.0;
        for (const SphereAtom& a : mu.sphere_atoms()) {
            if (chordal_distance(a.point, zero) <= 1e-12) at_zero += a.weight;
        }
        const double tv = binned_tv(mu, ReferenceMeasure::circle_haar(), 32);
        worst = std::min(worst, tv);
        r.passed &= mu.size() == 1 && std::fabs(at_zero - 1.0) <= 1e-12 && tv >= 0.9;
        t.add_row({std::to_string(n), std::to_string(mu.size()), fmt(at_zero), fmt(tv)});
    }
    const ExceptionalSet E = find_exceptional(sq);
    r.passed &= E.points.size() == 2 && E.contains(zero) && E.contains(SpherePoint::infinity());
    ctx.tables.emplace_back("crit2_exceptional.csv", t.str());
    r.detail = "min binned_tv over n <= 14 = " + fmt(worst) + "; |E| = " + std::to_string(E.points.size());
    return r;
}

CriterionResult periodic_counts(Context& ctx) {
    CriterionResult r{3, "periodic-point counts", true, ""};
    CsvTable t({"map", "n", "count", "expected", "match"});
    PeriodicOptions opt;
    opt.test_support = false;
    const std::vector<std::pair<std::string, SphereMap>> maps{{"z^2", SphereMap::power(2)},
                                                              {"z^2-2", SphereMap::chebyshev()}};
    std::vector<std::int64_t> totals(maps.size() * 10);
    parallel_for(totals.size(), ctx.threads, [&](std::size_t k) {
        const auto& f = maps[k / 10].second;
        std::int64_t total = 0;
        for (const PeriodicPoint& p : periodic_algebraic(f, static_cast<int>(k % 10) + 1, opt)) total += p.multiplicity;
        totals[k] = total;
    });
    for (std::size_t k = 0; k < totals.size(); ++k) {
        const int n = static_cast<int>(k % 10) + 1;
        const std::int64_t expected = (std::int64_t{1} << n) + 1;
        r.passed &= totals[k] == expected;
        t.add_row({maps[k / 10].first, std::to_string(n), std::to_string(totals[k]), std::to_string(expected),
                   format_bool(totals[k] == expected)});
    }

    const TorusMap A(IntMatrix2{3, 1, 1, 2});
    const auto lambda = eigenvalues(A.matrix());
    double ratio15 = 0.0;
    for (int n = 1; n <= 15; ++n) {
        const TorusPeriodicResult res = periodic_torus(A, n, 0);
        // independent closed form prod |lambda_i^n - 1|
        const double closed = std::abs((std::pow(lambda[0], n) - 1.0) * (std::pow(lambda[1], n) - 1.0));
        const auto expected = static_cast<std::int64_t>(std::llround(closed));
        bool match = res.count == expected;
        if (n <= 9) {
            std::int64_t streamed = 0;
            for_each_torus_periodic(A, n, [&](std::int64_t, std::int64_t, std::int64_t) { ++streamed; });
            match &= streamed == expected;
        }
        r.passed &= match;
        t.add_row({"torus[[3,1],[1,2]]", std::to_string(n), std::to_string(res.count), std::to_string(expected),
                   format_bool(match)});
        if (n == 15) ratio15 = static_cast<double>(res.count) / std::pow(5.0, 15);
    }
    r.passed &= ratio15 >= 0.99 && ratio15 <= 1.0;
    ctx.tables.emplace_back("crit3_counts.csv", t.str());
    r.detail = "sphere counts 2^n+1 for n <= 10: " + format_bool(r.passed) + "; torus count/5^15 = " + fmt(ratio15);
    return r;
}

CriterionResult periodic_equidistribution(Context& ctx) {
    CriterionResult r{4, "repelling periodic equidistribution", false, ""};
    CsvTable t({"map", "n", "points", "mass", "binned_tv", "ks"});
    PeriodicOptions opt;
    opt.seed = ctx.seed;

    const auto cheb = periodic_algebraic(SphereMap::chebyshev(), 11, opt);
    const AtomicMeasure mc = periodic_measure(cheb, PeriodicFilter::RepellingOnSupport, std::pow(2.0, 11));
    const double ks = ks_distance(mc, ReferenceMeasure::arcsine());
    const double tv_c = binned_tv(mc, ReferenceMeasure::arcsine(), 32);
    t.add_row({"z^2-2", "11", std::to_string(mc.size()), fmt(mc.total_mass()), fmt(tv_c), fmt(ks)});

    const auto sq = periodic_algebraic(SphereMap::power(2), 11, opt);
    const AtomicMeasure ms = periodic_measure(sq, PeriodicFilter::RepellingOnSupport, std::pow(2.0, 11));
    const double tv_s = binned_tv(ms, ReferenceMeasure::circle_haar(), 32);
    const double ks_s = ks_distance(ms, ReferenceMeasure::circle_haar());
    t.add_row({"z^2", "11", std::to_string(ms.size()), fmt(ms.total_mass()), fmt(tv_s), fmt(ks_s)});

    const TorusMap A(IntMatrix2{3, 1, 1, 2});
    const auto start = std::chrono::steady_clock::now();
    const std::vector<double> hist = torus_periodic_histogram(A, 12, 16);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    double mass = 0.0;
    for (double m : hist) mass += m;
    const double tv_t = binned_tv_torus_histogram(hist, 16);
    t.add_row({"torus[[3,1],[1,2]]", "12", std::to_string(periodic_torus(A, 12, 0).count), fmt(mass), fmt(tv_t), "na"});
    ctx.tables.emplace_back("crit4_periodic.csv", t.str());

    r.passed = ks <= 0.05 && mc.total_mass() >= 0.95 && tv_s <= 0.03 && tv_t <= 0.05 && seconds < 10.0;
    r.detail = "z^2-2: ks = " + fmt(ks) + ", mass = " + fmt(mc.total_mass()) + "; z^2: tv = " + fmt(tv_s) +
               "; torus n=12: tv = " + fmt(tv_t);
    if (seconds >= 10.0) r.detail += "; torus enumeration exceeded 10 s";
    return r;
}

CriterionResult inverse_branches(Context& ctx) {
    CriterionResult r{5, "inverse branches", false, ""};
    const SphereMap f = SphereMap::chebyshev();
    // independent draws: one backward walk per center, since consecutive
    // steps of a single walk linger near the fixed point 2
    constexpr std::size_t kCenters = 20;
    std::vector<SpherePoint> centers;
    Rng rng(ctx.seed);
    for (std::size_t c = 0; c < kCenters; ++c) {
        centers.push_back(sample_equilibrium(f, SpherePoint::finite(0.3), 100, 1, rng.next()).sphere_atoms()[0].point);
    }
    constexpr int kOrder = 10;
    constexpr double kEpsilon = 0.1;
    std::vector<std::vector<BranchStatistics>> stats(centers.size());
    parallel_for(centers.size(), ctx.threads, [&](std::size_t c) {
        const Disc disc{centers[c], 0.03};
        for (int n = 1; n <= kOrder; ++n) {
            stats[c].push_back(branch_statistics(track_branches(f, disc, n, ctx.seed + c), kEpsilon));
        }
    });
    CsvTable t({"center", "n", "d^n", "alive", "survival_fraction", "max_diameter", "bound", "size_bound_fraction"});
    double mean = 0.0;
    bool sizes = true, monotone = true;
    for (std::size_t c = 0; c < stats.size(); ++c) {
        const std::string center = fmt(centers[c].affine().real());
        for (int n = 1; n <= kOrder; ++n) {
            const BranchStatistics& s = stats[c][n - 1];
            t.add_row({center, std::to_string(n), std::to_string(s.total), std::to_string(s.alive),
                       fmt(s.survival_fraction), fmt(s.max_diameter), fmt(s.bound), fmt(s.size_bound_fraction)});
            if (n > 1) monotone &= s.survival_fraction <= stats[c][n - 2].survival_fraction;
        }
        mean += stats[c].back().survival_fraction / static_cast<double>(stats.size());
        sizes &= stats[c].back().size_bound_fraction == 1.0;
    }
    ctx.tables.emplace_back("crit5_branches.csv", t.str());
    r.passed = mean >= 0.85 && sizes && monotone;
    r.detail = "mean survival = " + fmt(mean) + "; size bound met by all alive: " + format_bool(sizes) +
               "; monotone in n: " + format_bool(monotone);
    return r;
}

CriterionResult branch_periodic(Context& ctx) {
    CriterionResult r{6, "branch-periodic cross-validation", false, ""};
    const SphereMap f = SphereMap::chebyshev();
    constexpr int kPeriod = 8;
    std::vector<Disc> balls;
    for (int k = -7; k <= 7; ++k) balls.push_back({SpherePoint::finite(0.25 * k), 0.15});
    const auto via = periodic_via_branches(f, kPeriod, balls, ctx.seed);
    PeriodicOptions opt;
    opt.test_support = false;
    const auto algebraic = periodic_algebraic(f, kPeriod, opt);
    const double bound = std::pow(0.5 + 0.1, -0.5 * kPeriod);
    CsvTable t({"re", "im", "modulus", "nearest_algebraic", "match", "above_bound"});
    bool all = true;
    for (const PeriodicPoint& p : via) {
        double nearest = 1.0;
        for (const PeriodicPoint& q : algebraic) nearest = std::min(nearest, chordal_distance(p.sphere(), q.sphere()));
        const bool match = nearest <= 1e-6, above = p.min_modulus() >= bound;
        all &= match && above;
        const Cplx z = p.sphere().affine();
        t.add_row({fmt(z.real()), fmt(z.imag()), fmt(p.min_modulus()), fmt(nearest), format_bool(match),
                   format_bool(above)});
    }
    ctx.tables.emplace_back("crit6_branch_periodic.csv", t.str());
    r.passed = all && !via.empty();
    r.detail = std::to_string(via.size()) + " branch points of " + std::to_string((1 << kPeriod)) +
               " matched and above the multiplier bound " + fmt(bound) + ": " + format_bool(all);
    return r;
}

CriterionResult lyapunov_bound(Context& ctx) {
    CriterionResult r{7, "Lyapunov bound", true, ""};
    CsvTable t({"map", "chi", "stderr", "samples", "floor", "floor_satisfied", "error"});
    const std::vector<std::tuple<std::string, SphereMap, SpherePoint>> maps{
        {"z^2", SphereMap::power(2), SpherePoint::finite(Cplx(1.0, 0.3))},
        {"z^2-2", SphereMap::chebyshev(), SpherePoint::finite(0.3)}};
    for (const auto& [name, f, a] : maps) {
        const LyapunovEstimate e = estimate_sphere(f, sample_equilibrium(f, a, 100, 10000, ctx.seed));
        const double err = std::fabs(e.chi - std::log(2.0));
        r.passed &= err <= 0.02 && e.floor_satisfied;
        t.add_row({name, fmt(e.chi), fmt(e.standard_error), std::to_string(e.sample_count), fmt(e.floor),
                   format_bool(e.floor_satisfied), fmt(err)});
        r.detail += name + ": |chi - log 2| = " + fmt(err) + "; ";
    }
    const TorusMap A(IntMatrix2{3, 1, 1, 2});
    const LyapunovEstimate e = estimate_torus(A);
    const double exact = std::log((5.0 - std::sqrt(5.0)) / 2.0);
    const double err = std::fabs(e.chi - exact);
    r.passed &= err <= 1e-12 && e.chi >= 0.5 * std::log(5.0 / spectral_radius(A.matrix()));
    t.add_row({"torus[[3,1],[1,2]]", fmt(e.chi), "0", "0", fmt(e.floor), format_bool(e.floor_satisfied), fmt(err)});
    ctx.tables.emplace_back("crit7_lyapunov.csv", t.str());
    r.detail += "torus: |chi - exact| = " + fmt(err);
    return r;
}

CriterionResult degree_profile(Context& ctx) {
    CriterionResult r{8, "degree profile", true, ""};
    CsvTable t({"matrix", "d1", "d2", "expected_d1", "expected_d2", "dominant"});
    const double s5 = std::sqrt(5.0);
    const std::vector<std::tuple<IntMatrix2, double, double, bool>> oracles{
        {{3, 1, 1, 2}, (5.0 + s5) / 2.0, 5.0, true},
        {{2, 1, 1, 1}, (3.0 + s5) / 2.0, 1.0, false},
        {{2, 0, 0, 2}, 2.0, 4.0, true}};
    for (const auto& [m, d1, d2, dominant] : oracles) {
        const DegreeProfile p = profile_torus(TorusMap(m));
        r.passed &= std::fabs(p.degrees[1] - d1) <= 1e-12 * d1 && p.degrees[2] == d2 && p.dominant == dominant;
        t.add_row({to_string(m), fmt(p.degrees[1]), fmt(p.degrees[2]), fmt(d1), fmt(d2), format_bool(p.dominant)});
    }
    Rng rng(ctx.seed);
    int tested = 0, concave = 0;
    while (tested < 100) {
        auto entry = [&] { return static_cast<std::int64_t>(rng.index(11)) - 5; };
        const IntMatrix2 m{entry(), entry(), entry(), entry()};
        if (m.det() == 0) continue;
        ++tested;
        concave += profile_torus(TorusMap(m)).log_concave();
    }
    const TorusMap A(IntMatrix2{3, 1, 1, 2});
    const double growth = verify_degree_growth(A, 1, 20).back();
    const double rho = spectral_radius(A.matrix());
    const double rel = std::fabs(growth - rho) / rho;
    r.passed &= concave == 100 && rel <= 0.05;
    ctx.tables.emplace_back("crit8_degrees.csv", t.str());
    r.detail = "log-concave " + std::to_string(concave) + "/100; ||A^20||^(1/20) = " + fmt(growth) +
               " (relative gap " + fmt(rel) + ")";
    return r;
}

AcceptanceReport run_once(std::uint64_t seed, int threads) {
    Context ctx{seed, threads, {}};
    AcceptanceReport report;
    using Check = CriterionResult (*)(Context&);
    const std::vector<std::pair<int, Check>> checks{
        {1, backward_equidistribution}, {2, exceptional_obstruction}, {3, periodic_counts},
        {4, periodic_equidistribution}, {5, inverse_branches},        {6, branch_periodic},
        {7, lyapunov_bound},            {8, degree_profile}};
    for (const auto& [id, check] : checks) {
        try {
            report.criteria.push_back(check(ctx));
        } catch (const std::exception& e) {
            report.criteria.push_back({id, "criterion " + std::to_string(id), false, e.what()});
        }
    }
    report.tables = std::move(ctx.tables);
    return report;
}

}  // namespace

bool AcceptanceReport::passed() const {
    return std::all_of(criteria.begin(), criteria.end(), [](const CriterionResult& c) { return c.passed; });
}

std::string AcceptanceReport::summary_csv() const {
    CsvTable t({"criterion", "name", "passed", "detail"});
    for (const CriterionResult& c : criteria) {
        std::string detail = c.detail;
        std::replace(detail.begin(), detail.end(), ',', ';');
        t.add_row({std::to_string(c.id), c.name, format_bool(c.passed), "\"" + detail + "\""});
    }
    return t.str();
}

AcceptanceReport run_acceptance(std::uint64_t seed, int threads, bool repeat) {
    AcceptanceReport report = run_once(seed, threads);
    if (!repeat) return report;
    const AcceptanceReport again = run_once(seed, threads > 1 ? 1 : 2);
    CriterionResult c{9, "determinism", true, ""};
    std::size_t differing = 0;
    c.passed = again.tables.size() == report.tables.size();
    for (std::size_t k = 0; c.passed && k < report.tables.size(); ++k) {
        if (report.tables[k] != again.tables[k]) ++differing;
    }
    c.passed &= differing == 0;
    c.detail = std::to_string(report.tables.size()) + " tables compared, " + std::to_string(differing) + " differ";
    report.criteria.push_back(c);
    return report;
}

}  // namespace holodyn
