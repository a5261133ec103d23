#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "holodyn/core.hpp"
#include "holodyn/torus.hpp"

namespace holodyn {

inline const std::vector<std::string> kExperimentKinds{
    "degrees", "fiber", "equidist_backward", "equidist_periodic", "branches", "exceptional", "lyapunov", "acceptance"};

struct ExperimentConfig {
    std::string kind;
    std::optional<SphereMap> sphere;
    std::optional<TorusMap> torus;
    nlohmann::json params = nlohmann::json::object();
    std::uint64_t seed = 1;
    int threads = 1;
    std::string output = "results";

    // Everything above with presets expanded, as echoed into result files.
    nlohmann::json resolved() const;
};

// Parses and validates a JSON experiment description; throws Error(Config)
// naming the offending field, or the line and column of a syntax error.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);

// Runs the experiment, writing CSV tables and a JSON sidecar into out_dir.
// Returns the process exit status; library errors propagate as Error.
int run_experiment(const ExperimentConfig& config, const std::filesystem::path& out_dir, std::ostream& log);

}  // namespace holodyn
