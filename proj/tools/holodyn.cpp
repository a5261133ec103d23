// Command line driver: one subcommand per experiment kind.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "holodyn/errors.hpp"
#include "holodyn/experiment.hpp"

namespace {

const char* kExitHelp =
    "Exit status:\n"
    "  0  success\n"
    "  2  configuration error (bad JSON, missing or out-of-range field, invalid map)\n"
    "  3  solver failure (root solver diverged, no branch survived, singular derivative, ...)\n"
    "  4  budget exceeded (atom budget, degree budget, floating-point range)\n"
    "  5  acceptance suite failed\n";

struct Options {
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
};

int run(const std::string& kind, const Options& o) {
    holodyn::ExperimentConfig config;
    if (!o.config.empty()) {
        config = holodyn::load_config(o.config);
        if (!config.kind.empty() && config.kind != kind) {
            throw holodyn::Error(holodyn::ErrorKind::Config, "config field 'kind': is '" + config.kind +
                                                                 "' but the subcommand is '" + kind + "'");
        }
    } else if (kind != "acceptance") {
        throw holodyn::Error(holodyn::ErrorKind::Config, "--config is required for '" + kind + "'");
    }
    config.kind = kind;
    if (kind == "acceptance" && o.config.empty()) config.seed = 20240611;
    if (o.seed) config.seed = *o.seed;
    if (o.threads) config.threads = *o.threads;
    if (!o.out.empty()) config.output = o.out;
    return holodyn::run_experiment(config, config.output, std::cout);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"holodyn: equidistribution experiments for rational and monomial maps"};
    app.footer(kExitHelp);
    app.set_version_flag("--version", std::string("holodyn ") + HOLODYN_VERSION);
    app.require_subcommand(1);

    Options options;
    std::string chosen;
    for (const std::string& kind : holodyn::kExperimentKinds) {
        CLI::App* sub = app.add_subcommand(kind, "run the '" + kind + "' experiment");
        sub->footer(kExitHelp);
        sub->add_option("--config", options.config, "JSON experiment description");
        sub->add_option("--out", options.out, "output directory (overrides the config)");
        sub->add_option("--seed", options.seed, "random seed (overrides the config)");
        sub->add_option("--threads", options.threads, "worker threads")->check(CLI::Range(1, 256));
        sub->callback([&chosen, kind] { chosen = kind; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : holodyn::kExitConfig;
    }

    try {
        return run(chosen, options);
    } catch (const holodyn::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return holodyn::exit_status(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return holodyn::kExitSolver;
    }
}
