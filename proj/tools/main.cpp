// relqm — scenario runner and identity-suite checker.
//
// Exit codes: 0 all requested work passed; 2 configuration, file, or schema
// error; 3 physics-check failure (identity case, binding validation,
// tolerance rollup); 4 numerical abort during propagation.

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "relqm/errors.hpp"
#include "relqm/generators/identity_suite.hpp"
#include "relqm/opexpr/config.hpp"
#include "relqm/runner/runner.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitConfig = 2;
constexpr int kExitPhysics = 3;
constexpr int kExitNumerics = 4;

struct JobOutcome {
    std::string config_path;
    int exit_code = kExitPass;
    std::vector<std::string> lines;  // stdout lines, printed in config order
};

std::string default_suite_path() {
#ifdef RELQM_DATA_DIR
    return std::string(RELQM_DATA_DIR) + "/identity_suite.cases";
#else
    return "data/identity_suite.cases";
#endif
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw relqm::opexpr::ParseError(0, 0, "cannot open '" + path.string() + "' for writing");
    out << content;
    if (!out) throw relqm::opexpr::ParseError(0, 0, "write failed for '" + path.string() + "'");
}

std::string stem_of(const std::string& config_path) {
    std::string stem = fs::path(config_path).stem().string();
    return stem.empty() ? std::string("scenario") : stem;
}

JobOutcome run_one(const std::string& config_path, const relqm::generators::IdentityReport& suite,
                   bool suite_ok, const std::string& out_override, bool force_frozen,
                   int order_override, const std::string& format_override) {
    JobOutcome out;
    out.config_path = config_path;
    try {
        relqm::opexpr::ScenarioConfig cfg = relqm::opexpr::parse_scenario(config_path);
        if (force_frozen) cfg.frozen_cm = true;
        if (order_override >= 0) cfg.eps_order = order_override;
        if (!out_override.empty()) cfg.out_dir = out_override;
        if (format_override == "csv") cfg.format = relqm::opexpr::CurveFormat::csv;
        if (format_override == "json") cfg.format = relqm::opexpr::CurveFormat::json;

        relqm::runner::RunResult r = relqm::runner::run_scenario(cfg);

        const std::string stem = stem_of(config_path);
        const fs::path dir = fs::path(cfg.out_dir) / stem;
        fs::create_directories(dir);
        const bool csv = cfg.format == relqm::opexpr::CurveFormat::csv;
        const std::string curve_name = csv ? "curve.csv" : "curve.json";
        write_file(dir / curve_name,
                   csv ? relqm::runner::curve_csv(r.curve) : relqm::runner::curve_json(r.curve));
        write_file(dir / "report.json", relqm::runner::report_json(r, &suite, curve_name));

        const bool pass = r.pass && suite_ok;
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%s %s (%ld steps, %.2f s) -> %s", pass ? "PASS" : "FAIL",
                      stem.c_str(), r.steps, r.wall_seconds,
                      (dir / "report.json").string().c_str());
        out.lines.push_back(buf);
        for (const auto& f : r.failures) out.lines.push_back("  failure: " + f);
        if (!suite_ok) out.lines.push_back("  failure: identity suite has failing cases");
        if (!pass) out.exit_code = kExitPhysics;
    } catch (const relqm::opexpr::ParseError& e) {
        out.lines.push_back("ERROR " + config_path + ": " + e.what());
        out.exit_code = kExitConfig;
    } catch (const relqm::NumericalAbort& e) {
        out.lines.push_back("ABORT " + config_path + ": " + e.what());
        out.exit_code = kExitNumerics;
    } catch (const relqm::Error& e) {
        out.lines.push_back("FAIL " + config_path + ": " + e.what());
        out.exit_code = kExitPhysics;
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Symbolic/numeric scenario laboratory for composite particles in accelerated frames"};
    app.require_subcommand(1);

    std::vector<std::string> configs;
    std::string out_dir;
    std::string format;
    std::string suite_path = default_suite_path();
    bool identity_only = false;
    bool frozen = false;
    bool quiet = false;
    int order = -1;
    int jobs = 1;
    long seed = 0;

    CLI::App* run = app.add_subcommand("run", "run scenario configs and write reports");
    run->add_option("configs", configs, "scenario config files");
    run->add_flag("--identity-suite-only", identity_only,
                  "run only the operator-identity suite and exit");
    run->add_flag("--frozen-cm", frozen, "force pure-phase mode (no propagation)");
    run->add_option("--order", order, "override expansion order")->check(CLI::Range(0, 1));
    run->add_option("--out", out_dir, "override output directory");
    run->add_option("--format", format, "override curve format")
        ->check(CLI::IsMember({"csv", "json"}));
    run->add_option("--suite", suite_path, "identity-suite case file");
    run->add_option("--seed", seed, "reserved; accepted and echoed only");
    run->add_option("--jobs", jobs, "run configs concurrently")->check(CLI::Range(1, 64));
    run->add_flag("--quiet", quiet, "suppress stdout; exit code only");

    CLI11_PARSE(app, argc, argv);

    auto say = [&](const std::string& line) {
        if (!quiet) std::cout << line << "\n";
    };

    // The identity suite runs first in every mode: scenario reports embed its
    // summary, and a red suite means the symbolic layer cannot be trusted.
    relqm::generators::IdentityReport suite;
    try {
        suite = relqm::generators::run_identity_suite(
            relqm::generators::load_identity_suite(suite_path));
    } catch (const relqm::generators::SuiteFormatError& e) {
        say(std::string("ERROR identity suite: ") + e.what());
        return kExitConfig;
    } catch (const relqm::Error& e) {
        say(std::string("ERROR identity suite: ") + e.what());
        return kExitConfig;
    }
    say("identity suite: " + std::to_string(suite.passed) + "/" +
        std::to_string(suite.results.size()) + " PASS");
    if (!suite.all_passed()) {
        for (const auto& line : relqm::generators::format_report_lines(suite))
            if (line.rfind("PASS", 0) != 0) say(line);
        if (identity_only) return kExitPhysics;
    }
    if (identity_only) return suite.all_passed() ? kExitPass : kExitPhysics;

    if (configs.empty()) {
        say("no configs given (use --identity-suite-only to check the suite alone)");
        return kExitConfig;
    }

    std::vector<JobOutcome> outcomes(configs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= configs.size()) return;
            outcomes[i] = run_one(configs[i], suite, suite.all_passed(), out_dir, frozen, order,
                                  format);
        }
    };
    if (jobs <= 1 || configs.size() <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        const int n = std::min<std::size_t>(jobs, configs.size());
        pool.reserve(n);
        for (int t = 0; t < n; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    int exit_code = kExitPass;
    for (const auto& o : outcomes) {
        for (const auto& line : o.lines) say(line);
        exit_code = std::max(exit_code, o.exit_code);
    }
    if (seed != 0) say("seed " + std::to_string(seed) + " accepted (reserved, no effect)");
    return exit_code;
}
