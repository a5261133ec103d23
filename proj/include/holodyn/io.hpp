#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "holodyn/atomic_measure.hpp"
#include "holodyn/branches.hpp"
#include "holodyn/exceptional.hpp"
#include "holodyn/lyapunov.hpp"
#include "holodyn/measures.hpp"
#include "holodyn/periodic.hpp"

namespace holodyn {

// Shortest round-trip-safe rendering used in every output file.
std::string format_number(double x);
std::string format_bool(bool b);

class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

    void add_row(std::vector<std::string> row);
    const std::vector<std::string>& header() const { return header_; }
    std::size_t size() const { return rows_.size(); }
    std::string str() const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

using KeyValues = std::vector<std::pair<std::string, std::string>>;
std::string key_value_text(const KeyValues& record);

void write_text(const std::filesystem::path& path, const std::string& content);

CsvTable measure_table(const AtomicMeasure& mu);
CsvTable periodic_table(const std::vector<PeriodicPoint>& points);
CsvTable exceptional_table(const ExceptionalSet& E);
CsvTable branch_table_header();
void add_branch_row(CsvTable& table, int n, const BranchStatistics& s);
KeyValues report_record(const MeasureDistanceReport& r);
KeyValues lyapunov_record(const LyapunovEstimate& e);

}  // namespace holodyn
