#include "holodyn/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "holodyn/acceptance.hpp"
#include "holodyn/branches.hpp"
#include "holodyn/degrees.hpp"
#include "holodyn/errors.hpp"
#include "holodyn/exceptional.hpp"
#include "holodyn/fibers.hpp"
#include "holodyn/io.hpp"
#include "holodyn/lyapunov.hpp"
#include "holodyn/measures.hpp"
#include "holodyn/periodic.hpp"

namespace holodyn {

using nlohmann::json;

namespace {

[[noreturn]] void field_error(const std::string& path, const std::string& message) {
    throw Error(ErrorKind::Config, "config field '" + path + "': " + message);
}

Cplx parse_complex(const json& j, const std::string& path) {
    if (j.is_number()) return j.get<double>();
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    field_error(path, "expected a number or a [re, im] pair");
}

json complex_json(Cplx z) { return json::array({z.real(), z.imag()}); }

std::vector<Cplx> parse_coefficients(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) field_error(path, "expected a non-empty coefficient list");
    std::vector<Cplx> out;
    for (std::size_t k = 0; k < j.size(); ++k) out.push_back(parse_complex(j[k], path + "[" + std::to_string(k) + "]"));
    return out;
}

std::int64_t parse_integer(const json& j, const std::string& path) {
    if (!j.is_number_integer()) field_error(path, "expected an integer");
    return j.get<std::int64_t>();
}

// Reads params[key] (filling in the default) and checks its range.
class ParamReader {
public:
    ParamReader(json& params, std::string kind) : params_(params), kind_(std::move(kind)) {}

    std::int64_t integer(const std::string& key, std::int64_t fallback, std::int64_t lo, std::int64_t hi) {
        json& v = slot(key, fallback);
        const std::int64_t x = parse_integer(v, path(key));
        if (x < lo || x > hi) {
            field_error(path(key), "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
        }
        return x;
    }

    double real(const std::string& key, double fallback, double lo, double hi) {
        json& v = slot(key, fallback);
        if (!v.is_number()) field_error(path(key), "expected a number");
        const double x = v.get<double>();
        if (!(x >= lo && x <= hi)) field_error(path(key), "must lie in [" + format_number(lo) + ", " + format_number(hi) + "]");
        return x;
    }

    std::string choice(const std::string& key, const std::string& fallback, const std::vector<std::string>& options) {
        json& v = slot(key, fallback);
        if (!v.is_string()) field_error(path(key), "expected a string");
        const std::string s = v.get<std::string>();
        if (std::find(options.begin(), options.end(), s) == options.end()) {
            std::string list;
            for (const auto& o : options) list += (list.empty() ? "" : ", ") + o;
            field_error(path(key), "must be one of " + list);
        }
        return s;
    }

    Cplx complex(const std::string& key, Cplx fallback) {
        json& v = slot(key, complex_json(fallback));
        const Cplx z = parse_complex(v, path(key));
        v = complex_json(z);
        return z;
    }

    std::pair<double, double> pair(const std::string& key, std::pair<double, double> fallback) {
        json& v = slot(key, json::array({fallback.first, fallback.second}));
        if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
            field_error(path(key), "expected a pair of numbers");
        }
        return {v[0].get<double>(), v[1].get<double>()};
    }

    void range(const std::string& lo_key, const std::string& hi_key, std::int64_t lo, std::int64_t hi) {
        if (lo > hi) field_error(path(hi_key), "must not be smaller than " + lo_key);
    }

private:
    json& slot(const std::string& key, const json& fallback) {
        if (!params_.contains(key)) params_[key] = fallback;
        return params_[key];
    }
    std::string path(const std::string& key) const { return "params." + key; }

    json& params_;
    std::string kind_;
};

void parse_map(const json& m, ExperimentConfig& c) {
    if (!m.is_object()) field_error("map", "expected an object");
    std::string space = m.contains("matrix") ? "torus" : "sphere";
    if (m.contains("space")) {
        if (!m["space"].is_string()) field_error("map.space", "expected \"sphere\" or \"torus\"");
        space = m["space"].get<std::string>();
    }
    if (space == "torus") {
        if (!m.contains("matrix")) field_error("map.matrix", "is missing");
        const json& a = m["matrix"];
        if (!a.is_array() || a.size() != 2 || !a[0].is_array() || !a[1].is_array() || a[0].size() != 2 ||
            a[1].size() != 2) {
            field_error("map.matrix", "expected a 2x2 integer array");
        }
        const IntMatrix2 mat{parse_integer(a[0][0], "map.matrix[0][0]"), parse_integer(a[0][1], "map.matrix[0][1]"),
                             parse_integer(a[1][0], "map.matrix[1][0]"), parse_integer(a[1][1], "map.matrix[1][1]")};
        for (std::int64_t e : {mat.a, mat.b, mat.c, mat.d}) {
            if (std::llabs(e) > 1'000'000) field_error("map.matrix", "entries must be at most 10^6 in modulus");
        }
        try {
            c.torus.emplace(mat);
        } catch (const Error& e) {
            field_error("map.matrix", e.what());
        }
        return;
    }
    if (space != "sphere") field_error("map.space", "expected \"sphere\" or \"torus\"");
    try {
        if (m.contains("preset")) {
            if (!m["preset"].is_string()) field_error("map.preset", "expected a string");
            const std::string preset = m["preset"].get<std::string>();
            auto degree = [&](std::int64_t fallback) {
                const std::int64_t d = m.contains("degree") ? parse_integer(m["degree"], "map.degree") : fallback;
                if (d < 1 || d > 64) field_error("map.degree", "must lie in [1, 64]");
                return static_cast<int>(d);
            };
            if (preset == "power_d") {
                c.sphere = SphereMap::power(degree(2));
            } else if (preset == "chebyshev") {
                c.sphere = SphereMap::chebyshev(degree(2));
            } else if (preset == "quadratic") {
                if (!m.contains("c")) field_error("map.c", "is missing (quadratic preset needs the parameter c)");
                c.sphere = SphereMap::quadratic(parse_complex(m["c"], "map.c"));
            } else {
                field_error("map.preset", "unknown preset '" + preset + "' (power_d, chebyshev, quadratic)");
            }
            return;
        }
        if (!m.contains("p")) field_error("map.p", "is missing (give coefficients p and q, or a preset)");
        if (!m.contains("q")) field_error("map.q", "is missing");
        c.sphere = SphereMap::from_coefficients(parse_coefficients(m["p"], "map.p"), parse_coefficients(m["q"], "map.q"));
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::Config) throw;
        field_error("map", e.what());
    }
}

void normalize_params(ExperimentConfig& c) {
    const bool torus = c.torus.has_value();
    ParamReader r(c.params, c.kind);
    const std::vector<std::string> references =
        torus ? std::vector<std::string>{"torus_haar", "sampled"}
              : std::vector<std::string>{"sampled", "arcsine", "circle_haar"};
    auto point = [&] {
        if (torus) {
            r.pair("point", {0.5, 1.1});
        } else {
            r.complex("point", Cplx(0.3, 0.0));
        }
    };
    auto reference = [&] {
        r.choice("reference", references.front(), references);
        r.pair("interval", {-2.0, 2.0});
        r.integer("reference_samples", 10000, 100, 10'000'000);
        r.integer("bins", 32, 4, 1024);
    };
    if (c.kind == "degrees") {
        r.integer("growth_n", 20, 1, 40);
    } else if (c.kind == "fiber") {
        point();
        r.integer("depth", 1, 0, 40);
        r.integer("atom_budget", static_cast<std::int64_t>(kDefaultAtomBudget), 1, 100'000'000);
    } else if (c.kind == "equidist_backward") {
        point();
        const auto lo = r.integer("n_min", 1, 0, 40);
        const auto hi = r.integer("n_max", 10, 0, 40);
        r.range("n_min", "n_max", lo, hi);
        r.integer("n_step", 1, 1, 40);
        reference();
        r.integer("test_functions", 64, 1, 100000);
        r.integer("atom_budget", static_cast<std::int64_t>(kDefaultAtomBudget), 1, 100'000'000);
    } else if (c.kind == "equidist_periodic") {
        const auto lo = r.integer("n_min", 1, 1, 40);
        const auto hi = r.integer("n_max", 8, 1, 40);
        r.range("n_min", "n_max", lo, hi);
        r.choice("filter", "repelling_on_support", {"all", "repelling", "repelling_on_support"});
        reference();
        r.integer("degree_budget", 5000, 3, 100000);
    } else if (c.kind == "branches") {
        if (torus) field_error("map", "branch tracking is implemented for sphere maps only");
        r.complex("center", Cplx(0.7, 0.0));
        r.real("radius", 0.05, 1e-9, 1e3);
        const auto lo = r.integer("n_min", 0, 0, 24);
        const auto hi = r.integer("n_max", 6, 0, 24);
        r.range("n_min", "n_max", lo, hi);
        r.integer("boundary_samples", 128, 64, 4096);
        r.real("epsilon", 0.1, 0.0, 10.0);
    } else if (c.kind == "exceptional") {
        if (torus) field_error("map", "exceptional-set detection is implemented for sphere maps only");
    } else if (c.kind == "lyapunov") {
        if (!torus) {
            point();
            r.integer("burn_in", 100, 0, 1'000'000);
            r.integer("samples", 10000, static_cast<std::int64_t>(kMinLyapunovSamples), 10'000'000);
        }
    }
}

// output location and thread count do not affect results, so they stay out of the echo
std::string header_block(const ExperimentConfig& c) {
    json j = c.resolved();
    j.erase("output");
    j.erase("threads");
    return "# holodyn " HOLODYN_VERSION "\n# config: " + j.dump() + "\n";
}

ReferenceMeasure build_reference(const ExperimentConfig& c) {
    const json& p = c.params;
    const std::string kind = p["reference"].get<std::string>();
    if (kind == "arcsine") return ReferenceMeasure::arcsine(p["interval"][0].get<double>(), p["interval"][1].get<double>());
    if (kind == "circle_haar") return ReferenceMeasure::circle_haar();
    if (kind == "torus_haar") return ReferenceMeasure::torus_haar();
    const int count = p["reference_samples"].get<int>();
    if (c.torus) return ReferenceMeasure::sampled(sample_equilibrium(*c.torus, TorusPoint(0.37, 2.21), 100, count, c.seed + 1));
    return ReferenceMeasure::sampled(sample_equilibrium(*c.sphere, SpherePoint::finite(Cplx(0.37, 0.21)), 100, count, c.seed + 1));
}

bool one_dimensional(const ReferenceMeasure& ref) {
    return ref.kind == ReferenceMeasure::Kind::CircleHaar || ref.kind == ReferenceMeasure::Kind::ArcsineInterval;
}

struct Output {
    const ExperimentConfig& config;
    std::filesystem::path dir;
    json files = json::array();
    json metadata = json::object();

    void csv(const std::string& name, const CsvTable& table) {
        write_text(dir / name, header_block(config) + table.str());
        files.push_back(name);
    }
    void text(const std::string& name, const std::string& body) {
        write_text(dir / name, header_block(config) + body);
        files.push_back(name);
    }
    void sidecar() {
        json j;
        j["version"] = HOLODYN_VERSION;
        j["kind"] = config.kind;
        j["config"] = config.resolved();
        j["files"] = files;
        j["metadata"] = metadata;
        write_text(dir / (config.kind + ".json"), j.dump(2) + "\n");
    }
};

int run_degrees(const ExperimentConfig& c, Output& out, std::ostream& log) {
    const DegreeProfile p = c.torus ? profile_torus(*c.torus) : profile_sphere(*c.sphere);
    CsvTable t({"space", "d0", "d1", "d2", "topological", "dominant", "lyapunov_floor", "log_concave"});
    t.add_row({c.torus ? "torus" : "sphere", format_number(p.degrees[0]), format_number(p.degrees[1]),
               p.degrees.size() > 2 ? format_number(p.degrees[2]) : "na", format_number(p.topological),
               format_bool(p.dominant), p.lyapunov_floor ? format_number(*p.lyapunov_floor) : "na",
               format_bool(p.log_concave())});
    out.csv("degrees.csv", t);
    if (c.torus) {
        CsvTable g({"n", "norm_root", "det_root"});
        const int n_max = c.params["growth_n"].get<int>();
        const auto g1 = verify_degree_growth(*c.torus, 1, n_max);
        const auto g2 = verify_degree_growth(*c.torus, 2, n_max);
        for (int n = 1; n <= n_max; ++n) {
            g.add_row({std::to_string(n), format_number(g1[n - 1]), format_number(g2[n - 1])});
        }
        out.csv("degree_growth.csv", g);
    }
    log << "d1 = " << format_number(p.degrees[1]) << ", d_t = " << format_number(p.topological)
        << ", dominant = " << format_bool(p.dominant) << "\n";
    return kExitOk;
}

AtomicMeasure pullback(const ExperimentConfig& c, int n, std::size_t budget) {
    const json& pt = c.params["point"];
    if (c.torus) return pullback_measure(*c.torus, TorusPoint(pt[0].get<double>(), pt[1].get<double>()), n, budget);
    return pullback_measure(*c.sphere, SpherePoint::finite(parse_complex(pt, "params.point")), n, budget);
}

int run_fiber(const ExperimentConfig& c, Output& out, std::ostream& log) {
    const AtomicMeasure mu =
        pullback(c, c.params["depth"].get<int>(), c.params["atom_budget"].get<std::size_t>());
    out.csv("fiber.csv", measure_table(mu));
    out.metadata["indeterminacy_check"] =
        c.torus ? "torus fibers never meet the compactification axes; membership in the indeterminacy orbit is "
                  "only checked up to the computed depth"
                : "not applicable (holomorphic sphere map)";
    log << mu.size() << " atoms, total mass " << format_number(mu.total_mass()) << "\n";
    return kExitOk;
}

int run_backward(const ExperimentConfig& c, Output& out, std::ostream& log) {
    const json& p = c.params;
    const ReferenceMeasure ref = build_reference(c);
    const int bins = p["bins"].get<int>();
    CsvTable t({"n", "atoms", "binned_tv", "ks", "lipschitz_gap"});
    std::string records;
    for (int n = p["n_min"].get<int>(); n <= p["n_max"].get<int>(); n += p["n_step"].get<int>()) {
        const AtomicMeasure mu = pullback(c, n, p["atom_budget"].get<std::size_t>());
        const MeasureDistanceReport r = compare(mu, ref, bins, c.seed, p["test_functions"].get<int>());
        t.add_row({std::to_string(n), std::to_string(mu.size()), format_number(r.binned_tv),
                   r.ks_1d ? format_number(*r.ks_1d) : "na", format_number(r.lipschitz_gap)});
        KeyValues record{{"n", std::to_string(n)}, {"atoms", std::to_string(mu.size())}};
        for (auto& kv : report_record(r)) record.push_back(std::move(kv));
        records += key_value_text(record) + "\n";
        log << "n = " << n << ": binned_tv = " << format_number(r.binned_tv) << "\n";
    }
    out.csv("equidist_backward.csv", t);
    out.text("equidist_backward.txt", records);
    return kExitOk;
}

constexpr std::int64_t kPointTableLimit = 100000;

int run_periodic(const ExperimentConfig& c, Output& out, std::ostream& log) {
    const json& p = c.params;
    const int bins = p["bins"].get<int>();
    const std::string filter_name = p["filter"].get<std::string>();
    const PeriodicFilter filter = filter_name == "all"         ? PeriodicFilter::All
                                  : filter_name == "repelling" ? PeriodicFilter::Repelling
                                                               : PeriodicFilter::RepellingOnSupport;
    const ReferenceMeasure ref = build_reference(c);
    CsvTable t({"n", "count", "repelling_count", "mass", "binned_tv", "ks"});
    for (int n = p["n_min"].get<int>(); n <= p["n_max"].get<int>(); ++n) {
        if (c.torus) {
            const TorusPeriodicResult res = periodic_torus(*c.torus, n, 0);
            const bool repelling = res.classification == Classification::Repelling;
            const std::int64_t kept = filter == PeriodicFilter::All || repelling ? res.count : 0;
            std::string tv = "na";
            if (ref.kind == ReferenceMeasure::Kind::TorusHaar) {
                std::vector<double> hist = torus_periodic_histogram(*c.torus, n, bins);
                if (kept == 0) std::fill(hist.begin(), hist.end(), 0.0);
                tv = format_number(binned_tv_torus_histogram(hist, bins));
            } else if (kept > 0) {
                const TorusPeriodicResult pts = periodic_torus(*c.torus, n);
                if (!pts.enumerated) throw Error(ErrorKind::AtomBudgetExceeded, "too many periodic points to enumerate");
                const double norm = std::pow(static_cast<double>(std::llabs(c.torus->matrix().det())), n);
                tv = format_number(binned_tv(periodic_measure(pts.points, filter, norm), ref, bins));
            }
            const double mass = static_cast<double>(kept) / std::pow(static_cast<double>(std::llabs(c.torus->matrix().det())), n);
            t.add_row({std::to_string(n), std::to_string(res.count), std::to_string(repelling ? res.count : 0),
                       format_number(mass), tv, "na"});
            if (n == p["n_max"].get<int>() && res.count <= kPointTableLimit) {
                out.csv("periodic_points.csv", periodic_table(periodic_torus(*c.torus, n).points));
            }
            log << "n = " << n << ": count = " << res.count << "\n";
            continue;
        }
        PeriodicOptions opt;
        opt.seed = c.seed;
        opt.degree_budget = p["degree_budget"].get<std::int64_t>();
        opt.test_support = filter == PeriodicFilter::RepellingOnSupport;
        const auto points = periodic_algebraic(*c.sphere, n, opt);
        if (n == p["n_max"].get<int>()) out.csv("periodic_points.csv", periodic_table(points));
        std::int64_t count = 0, repelling = 0;
        for (const PeriodicPoint& q : points) {
            count += q.multiplicity;
            repelling += q.classification == Classification::Repelling;
        }
        const AtomicMeasure mu = periodic_measure(points, filter, std::pow(static_cast<double>(c.sphere->degree()), n));
        std::string tv = "na", ks = "na";
        if (!mu.empty()) {
            tv = format_number(binned_tv(mu, ref, bins));
            if (one_dimensional(ref)) ks = format_number(ks_distance(mu, ref));
        }
        t.add_row({std::to_string(n), std::to_string(count), std::to_string(repelling), format_number(mu.total_mass()),
                   tv, ks});
        log << "n = " << n << ": count = " << count << ", repelling = " << repelling << "\n";
    }
    out.csv("equidist_periodic.csv", t);
    return kExitOk;
}

int run_branches(const ExperimentConfig& c, Output& out, std::ostream& log) {
    const json& p = c.params;
    const Disc disc{SpherePoint::finite(parse_complex(p["center"], "params.center")), p["radius"].get<double>()};
    BranchOptions opt;
    opt.boundary_samples = p["boundary_samples"].get<int>();
    CsvTable t = branch_table_header();
    for (int n = p["n_min"].get<int>(); n <= p["n_max"].get<int>(); ++n) {
        const BranchStatistics s = branch_statistics(track_branches(*c.sphere, disc, n, c.seed, opt), p["epsilon"].get<double>());
        add_branch_row(t, n, s);
        log << "n = " << n << ": survival = " << format_number(s.survival_fraction) << "\n";
    }
    out.csv("branches.csv", t);
    return kExitOk;
}

int run_exceptional(const ExperimentConfig& c, Output& out, std::ostream& log) {
    const ExceptionalSet E = find_exceptional(*c.sphere);
    out.csv("exceptional.csv", exceptional_table(E));
    out.metadata["invariance_verified"] = verify_invariance(*c.sphere, E);
    out.metadata["scope"] = "sphere maps only; the torus family is not covered";
    log << E.points.size() << " exceptional point(s)\n";
    return kExitOk;
}

int run_lyapunov(const ExperimentConfig& c, Output& out, std::ostream& log) {
    LyapunovEstimate e;
    if (c.torus) {
        e = estimate_torus(*c.torus);
    } else {
        const json& p = c.params;
        const AtomicMeasure samples = sample_equilibrium(*c.sphere, SpherePoint::finite(parse_complex(p["point"], "params.point")),
                                                         p["burn_in"].get<int>(), p["samples"].get<int>(), c.seed);
        e = estimate_sphere(*c.sphere, samples);
    }
    const KeyValues record = lyapunov_record(e);
    std::vector<std::string> header, row;
    for (const auto& [k, v] : record) {
        header.push_back(k);
        row.push_back(v);
    }
    CsvTable t(header);
    t.add_row(row);
    out.csv("lyapunov.csv", t);
    out.text("lyapunov.txt", key_value_text(record));
    log << key_value_text(record);
    return kExitOk;
}

int run_acceptance_kind(const ExperimentConfig& c, Output& out, std::ostream& log) {
    const AcceptanceReport report = run_acceptance(c.seed, c.threads);
    for (const auto& [name, body] : report.tables) {
        write_text(out.dir / name, header_block(c) + body);
        out.files.push_back(name);
    }
    write_text(out.dir / "acceptance.csv", header_block(c) + report.summary_csv());
    out.files.push_back("acceptance.csv");
    for (const CriterionResult& r : report.criteria) {
        log << "criterion " << r.id << " " << (r.passed ? "PASS" : "FAIL") << "  " << r.name << ": " << r.detail << "\n";
    }
    out.metadata["passed"] = report.passed();
    return report.passed() ? kExitOk : kExitAcceptance;
}

}  // namespace

json ExperimentConfig::resolved() const {
    json j;
    j["kind"] = kind;
    j["seed"] = seed;
    j["threads"] = threads;
    j["output"] = output;
    if (sphere) {
        json p = json::array(), q = json::array();
        for (const Cplx& z : sphere->p()) p.push_back(complex_json(z));
        for (const Cplx& z : sphere->q()) q.push_back(complex_json(z));
        j["map"] = {{"space", "sphere"}, {"degree", sphere->degree()}, {"p", p}, {"q", q}};
    } else if (torus) {
        const IntMatrix2& m = torus->matrix();
        j["map"] = {{"space", "torus"}, {"matrix", json::array({json::array({m.a, m.b}), json::array({m.c, m.d})})}};
    }
    j["params"] = params;
    return j;
}

ExperimentConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        // translate the byte offset into a line and column
        std::size_t line = 1, column = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw Error(ErrorKind::Config, "syntax error at line " + std::to_string(line) + ", column " +
                                           std::to_string(column) + ": " + e.what());
    }
    if (!j.is_object()) throw Error(ErrorKind::Config, "config must be a JSON object");
    static const std::vector<std::string> known{"kind", "map", "params", "seed", "threads", "output"};
    for (const auto& [key, value] : j.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end()) field_error(key, "unknown field");
    }

    ExperimentConfig c;
    if (j.contains("kind")) {
        if (!j["kind"].is_string()) field_error("kind", "expected a string");
        c.kind = j["kind"].get<std::string>();
        if (std::find(kExperimentKinds.begin(), kExperimentKinds.end(), c.kind) == kExperimentKinds.end()) {
            field_error("kind", "unknown experiment kind '" + c.kind + "'");
        }
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) field_error("seed", "expected a non-negative integer");
        c.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("threads")) {
        const std::int64_t t = parse_integer(j["threads"], "threads");
        if (t < 1 || t > 256) field_error("threads", "must lie in [1, 256]");
        c.threads = static_cast<int>(t);
    }
    if (j.contains("output")) {
        if (!j["output"].is_string()) field_error("output", "expected a path string");
        c.output = j["output"].get<std::string>();
    }
    if (j.contains("params")) {
        if (!j["params"].is_object()) field_error("params", "expected an object");
        c.params = j["params"];
    }
    if (j.contains("map")) {
        parse_map(j["map"], c);
    } else if (c.kind != "acceptance") {
        field_error("map", "is missing");
    }
    return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Config, "cannot read config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

int run_experiment(const ExperimentConfig& config, const std::filesystem::path& out_dir, std::ostream& log) {
    ExperimentConfig c = config;
    if (c.kind.empty()) throw Error(ErrorKind::Config, "config field 'kind': is missing");
    if (c.kind != "acceptance" && !c.sphere && !c.torus) field_error("map", "is missing");
    normalize_params(c);
    Output out{c, out_dir};
    int status = kExitOk;
    if (c.kind == "degrees") status = run_degrees(c, out, log);
    else if (c.kind == "fiber") status = run_fiber(c, out, log);
    else if (c.kind == "equidist_backward") status = run_backward(c, out, log);
    else if (c.kind == "equidist_periodic") status = run_periodic(c, out, log);
    else if (c.kind == "branches") status = run_branches(c, out, log);
    else if (c.kind == "exceptional") status = run_exceptional(c, out, log);
    else if (c.kind == "lyapunov") status = run_lyapunov(c, out, log);
    else status = run_acceptance_kind(c, out, log);
    out.sidecar();
    return status;
}

}  // namespace holodyn
