#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace holodyn {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
};

struct AcceptanceReport {
    std::vector<CriterionResult> criteria;
    // (file name, CSV content) for every result table, in a fixed order
    std::vector<std::pair<std::string, std::string>> tables;

    bool passed() const;
    std::string summary_csv() const;
};

// Runs criteria 1-8; with `repeat`, runs them again on a different thread
// count and adds criterion 9 (byte-identical tables).
AcceptanceReport run_acceptance(std::uint64_t seed, int threads, bool repeat = true);

inline constexpr std::uint64_t kDefaultAcceptanceSeed = 20240611;

}  // namespace holodyn
