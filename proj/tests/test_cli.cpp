#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "holodyn/errors.hpp"
#include "holodyn/experiment.hpp"

using namespace holodyn;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("holodyn_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<std::vector<std::string>> csv_rows(const fs::path& p) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(slurp(p));
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> row;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) row.push_back(cell);
        rows.push_back(row);
    }
    return rows;
}

int run_cli(const std::string& args) {
    const int status = std::system((std::string(HOLODYN_CLI) + " " + args + " > /dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string config_error(const std::string& text) {
    try {
        parse_config(text);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Config);
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("config parsing and presets") {
    const ExperimentConfig c = parse_config(R"({"kind": "degrees", "map": {"preset": "quadratic", "c": [0.1, -0.2]}, "seed": 9})");
    REQUIRE(c.sphere);
    CHECK(c.seed == 9);
    CHECK(c.sphere->p()[0] == std::complex<double>(0.1, -0.2));
    const auto echoed = c.resolved();
    CHECK(echoed["map"]["p"].size() == 3);
    CHECK(echoed["map"]["q"].size() == 3);

    const ExperimentConfig t = parse_config(R"({"kind": "lyapunov", "map": {"matrix": [[3, 1], [1, 2]]}})");
    REQUIRE(t.torus);
    CHECK(t.torus->matrix() == IntMatrix2{3, 1, 1, 2});

    const ExperimentConfig e = parse_config(R"({"kind": "fiber", "map": {"p": [0, 0, 1], "q": [1, 0, 0]}})");
    REQUIRE(e.sphere);
    CHECK(e.sphere->degree() == 2);
}

TEST_CASE("config diagnostics name the field") {
    CHECK(config_error(R"({"kind": "degrees"})").find("'map'") != std::string::npos);
    CHECK(config_error(R"({"kind": "degrees", "map": {"preset": "quadratic"}})").find("'map.c'") != std::string::npos);
    CHECK(config_error(R"({"kind": "nonsense", "map": {"preset": "power_d"}})").find("'kind'") != std::string::npos);
    CHECK(config_error(R"({"kind": "degrees", "map": {"matrix": [[1, 2], [2, 4]]}})").find("'map.matrix'") != std::string::npos);
    CHECK(config_error(R"({"kind": "degrees", "mapp": {}})").find("'mapp'") != std::string::npos);
    CHECK(config_error("{\"kind\": \"degrees\",\n  \"map\": {\"preset\" \"power_d\"}}").find("line 2") != std::string::npos);
}

TEST_CASE("parameter ranges are enforced") {
    ExperimentConfig c = parse_config(R"({"kind": "fiber", "map": {"preset": "power_d"}, "params": {"depth": 99}})");
    std::ostringstream log;
    try {
        run_experiment(c, scratch("range"), log);
        FAIL("expected a config error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Config);
        CHECK(std::string(e.what()).find("params.depth") != std::string::npos);
    }
}

TEST_CASE("degrees experiment for the torus example") {
    const fs::path out = scratch("degrees");
    std::ostringstream log;
    CHECK(run_experiment(parse_config(R"({"kind": "degrees", "map": {"matrix": [[3, 1], [1, 2]]}})"), out, log) == 0);
    const std::string text = slurp(out / "degrees.csv");
    CHECK(text.rfind("# holodyn ", 0) == 0);
    CHECK(text.find("# config: ") != std::string::npos);
    const auto rows = csv_rows(out / "degrees.csv");
    REQUIRE(rows.size() == 2);
    CHECK(rows[0][2] == "d1");
    CHECK(std::stod(rows[1][2]) == doctest::Approx(3.6180).epsilon(1e-4));
    CHECK(rows[1][3] == "5");
    CHECK(rows[1][5] == "true");
    CHECK(fs::exists(out / "degrees.json"));
}

TEST_CASE("periodic equidistribution run for the Chebyshev map") {
    const fs::path out = scratch("periodic");
    std::ostringstream log;
    const ExperimentConfig c = parse_config(
        R"({"kind": "equidist_periodic", "map": {"preset": "chebyshev"}, "params": {"n_min": 1, "n_max": 12, "reference": "arcsine"}})");
    CHECK(run_experiment(c, out, log) == 0);
    const auto rows = csv_rows(out / "equidist_periodic.csv");
    REQUIRE(rows.size() == 13);
    CHECK(rows[0] == std::vector<std::string>{"n", "count", "repelling_count", "mass", "binned_tv", "ks"});
    double first = 0.0, last = 0.0;
    int rises = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const int n = static_cast<int>(i);
        CHECK(std::stol(rows[i][1]) == (1L << n) + 1);
        const double ks = std::stod(rows[i][5]);
        if (i == 1) first = ks;
        if (i > 1 && ks > last) ++rises;
        last = ks;
    }
    CHECK(last < first);
    CHECK(rises == 0);
}

TEST_CASE("identical configs give byte-identical files") {
    const std::string cfg =
        R"({"kind": "equidist_backward", "map": {"preset": "quadratic", "c": [-0.12, 0.75]}, "params": {"n_min": 4, "n_max": 8}, "seed": 5})";
    const fs::path a = scratch("det_a"), b = scratch("det_b");
    std::ostringstream log;
    ExperimentConfig c = parse_config(cfg);
    run_experiment(c, a, log);
    c.threads = 3;
    run_experiment(c, b, log);
    CHECK(slurp(a / "equidist_backward.csv") == slurp(b / "equidist_backward.csv"));
    CHECK_FALSE(slurp(a / "equidist_backward.csv").empty());
}

TEST_CASE("each kind runs on a small example") {
    const std::vector<std::pair<std::string, std::string>> cases{
        {"fiber", R"({"kind": "fiber", "map": {"matrix": [[3, 1], [1, 2]]}, "params": {"depth": 2}})"},
        {"branches", R"({"kind": "branches", "map": {"preset": "chebyshev"}, "params": {"n_max": 4}})"},
        {"exceptional", R"({"kind": "exceptional", "map": {"preset": "power_d", "degree": 3}})"},
        {"lyapunov", R"({"kind": "lyapunov", "map": {"preset": "chebyshev"}, "params": {"samples": 2000}})"},
        {"equidist_periodic", R"({"kind": "equidist_periodic", "map": {"matrix": [[3, 1], [1, 2]]}, "params": {"n_max": 5}})"},
    };
    for (const auto& [kind, text] : cases) {
        const fs::path out = scratch("kind_" + kind);
        std::ostringstream log;
        CHECK(run_experiment(parse_config(text), out, log) == 0);
        CHECK(fs::exists(out / (kind + ".json")));
    }
}

TEST_CASE("command line exit statuses") {
    const fs::path dir = scratch("cli");
    std::ofstream(dir / "missing.json") << R"({"kind": "degrees"})";
    std::ofstream(dir / "ok.json") << R"({"kind": "degrees", "map": {"preset": "power_d"}})";
    std::ofstream(dir / "budget.json") << R"({"kind": "fiber", "map": {"preset": "power_d"}, "params": {"depth": 12, "atom_budget": 100}})";
    CHECK(run_cli("degrees --config " + (dir / "missing.json").string() + " --out " + (dir / "o").string()) == 2);
    CHECK(run_cli("degrees --config " + (dir / "ok.json").string() + " --out " + (dir / "o").string()) == 0);
    CHECK(run_cli("fiber --config " + (dir / "budget.json").string() + " --out " + (dir / "o").string()) == 4);
    CHECK(run_cli("degrees") == 2);
    CHECK(run_cli("--version") == 0);
    CHECK(run_cli("--help") == 0);
}

TEST_CASE("shipped configs parse") {
    int seen = 0;
    for (const auto& entry : fs::directory_iterator(HOLODYN_CONFIG_DIR)) {
        if (entry.path().extension() != ".json") continue;
        CAPTURE(entry.path().string());
        const ExperimentConfig c = load_config(entry.path());
        CHECK_FALSE(c.kind.empty());
        ++seen;
    }
    CHECK(seen >= 8);
}
