#include "holodyn/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "holodyn/errors.hpp"

namespace holodyn {

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

std::string format_bool(bool b) { return b ? "true" : "false"; }

void CsvTable::add_row(std::vector<std::string> row) {
    if (row.size() != header_.size()) throw Error(ErrorKind::InvalidArgument, "CSV row width does not match the header");
    rows_.push_back(std::move(row));
}

std::string CsvTable::str() const {
    std::string out;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            out += cells[i];
        }
        out += '\n';
    };
    line(header_);
    for (const auto& r : rows_) line(r);
    return out;
}

std::string key_value_text(const KeyValues& record) {
    std::string out;
    for (const auto& [k, v] : record) out += k + " = " + v + "\n";
    return out;
}

void write_text(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Config, "cannot write " + path.string());
    out << content;
    if (!out) throw Error(ErrorKind::Config, "write failed for " + path.string());
}

namespace {

std::pair<std::string, std::string> affine_cells(const SpherePoint& x) {
    if (x.is_infinity()) return {"inf", "inf"};
    const Cplx z = x.affine();
    return {format_number(z.real()), format_number(z.imag())};
}

}  // namespace

CsvTable measure_table(const AtomicMeasure& mu) {
    if (mu.space() == Space::Torus) {
        CsvTable t({"theta1", "theta2", "weight"});
        for (const TorusAtom& a : mu.torus_atoms()) {
            t.add_row({format_number(a.point.theta1), format_number(a.point.theta2), format_number(a.weight)});
        }
        return t;
    }
    CsvTable t({"re", "im", "weight"});
    for (const SphereAtom& a : mu.sphere_atoms()) {
        auto [re, im] = affine_cells(a.point);
        t.add_row({re, im, format_number(a.weight)});
    }
    return t;
}

CsvTable periodic_table(const std::vector<PeriodicPoint>& points) {
    const bool torus = !points.empty() && std::holds_alternative<TorusPoint>(points.front().point);
    CsvTable t(torus ? std::vector<std::string>{"period", "theta1", "theta2", "multiplicity", "min_modulus", "class",
                                                "on_support"}
                     : std::vector<std::string>{"period", "re", "im", "multiplicity", "min_modulus", "class",
                                                "on_support"});
    for (const PeriodicPoint& p : points) {
        std::string a, b;
        if (torus) {
            a = format_number(p.torus().theta1);
            b = format_number(p.torus().theta2);
        } else {
            std::tie(a, b) = affine_cells(p.sphere());
        }
        t.add_row({std::to_string(p.period), a, b, std::to_string(p.multiplicity), format_number(p.min_modulus()),
                   std::string(to_string(p.classification)), format_bool(p.on_support)});
    }
    return t;
}

CsvTable exceptional_table(const ExceptionalSet& E) {
    CsvTable t({"re", "im", "verified_depth"});
    for (const SpherePoint& x : E.points) {
        auto [re, im] = affine_cells(x);
        t.add_row({re, im, std::to_string(E.verified_depth)});
    }
    return t;
}

CsvTable branch_table_header() {
    return CsvTable({"n", "d^n", "alive", "survival_fraction", "max_diameter", "bound", "size_bound_fraction"});
}

void add_branch_row(CsvTable& table, int n, const BranchStatistics& s) {
    table.add_row({std::to_string(n), std::to_string(s.total), std::to_string(s.alive),
                   format_number(s.survival_fraction), format_number(s.max_diameter), format_number(s.bound),
                   format_number(s.size_bound_fraction)});
}

KeyValues report_record(const MeasureDistanceReport& r) {
    return {{"binned_tv", format_number(r.binned_tv)},
            {"ks_1d", r.ks_1d ? format_number(*r.ks_1d) : "na"},
            {"lipschitz_gap", format_number(r.lipschitz_gap)},
            {"bins", std::to_string(r.bins)},
            {"test_function_count", std::to_string(r.test_function_count)}};
}

KeyValues lyapunov_record(const LyapunovEstimate& e) {
    return {{"chi", format_number(e.chi)},
            {"stderr", format_number(e.standard_error)},
            {"sample_count", std::to_string(e.sample_count)},
            {"skipped", std::to_string(e.skipped)},
            {"floor", format_number(e.floor)},
            {"floor_satisfied", format_bool(e.floor_satisfied)}};
}

}  // namespace holodyn
