#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "demi/suites.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kUsage = 2;

demi::SuiteConfig load_config(const std::string& path) {
    if (path.empty()) return {};
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read config: " + path);
    return demi::SuiteConfig::from_json(demi::Json::parse(in));
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical verification of demi-distribution identities"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    std::vector<std::string> suites;
    std::optional<std::uint64_t> seed;
    std::optional<int> samples;
    auto* run = app.add_subcommand("run", "Run verification suites and write report.json and residuals.csv");
    run->add_option("--config", config_path, "JSON config file");
    run->add_option("--suite", suites, "Suite id (repeatable); overrides the config list");
    run->add_option("--seed", seed, "Base seed");
    run->add_option("--samples", samples, "Samples per check");
    run->add_option("--out", out_dir, "Output directory");

    std::string describe_id;
    auto* describe = app.add_subcommand("describe", "Show the checks a suite runs");
    describe->add_option("suite", describe_id, "Suite id")->required();

    app.add_subcommand("list", "List registered suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsage;
    }

    if (app.got_subcommand("list")) {
        for (const auto& s : demi::registry()) {
            std::cout << s.id;
            for (const auto& a : s.aliases) std::cout << " (" << a << ")";
            std::cout << "  " << s.summary << "\n";
        }
        return 0;
    }

    if (app.got_subcommand(describe)) {
        try {
            std::cout << demi::describe_suite(describe_id);
            return 0;
        } catch (const std::invalid_argument& e) {
            std::cerr << "verify: " << e.what() << "\n";
            return kUsage;
        }
    }

    demi::SuiteConfig cfg;
    try {
        cfg = load_config(config_path);
        if (!suites.empty()) cfg.suites = suites;
        if (seed) cfg.seed = *seed;
        if (samples) cfg.samples_per_check = *samples;
        if (!out_dir.empty()) cfg.output_path = out_dir;
        cfg.validate();
    } catch (const std::exception& e) {
        std::cerr << "verify: " << e.what() << "\n";
        return kUsage;
    }

    const auto results = demi::run_suites(cfg);
    int failed = 0;
    for (const auto& r : results) {
        std::printf("%-4s %-36s n=%-4d max=%.3e tol=%.1e\n", r.pass ? "PASS" : "FAIL", r.check_id.c_str(), r.n_samples,
                    r.max_residual, r.tolerance);
        if (!r.pass) {
            ++failed;
            std::printf("       worst: %s\n", r.worst_sample.c_str());
        }
    }

    try {
        const fs::path dir(cfg.output_path);
        fs::create_directories(dir);
        write_file(dir / "report.json", demi::report_json(results).dump(2) + "\n");
        write_file(dir / "residuals.csv", demi::residuals_csv(results));
        std::printf("%zu checks, %d failed; report in %s\n", results.size(), failed, (dir / "report.json").c_str());
    } catch (const std::exception& e) {
        std::cerr << "verify: " << e.what() << "\n";
        return kUsage;
    }
    return failed == 0 ? 0 : 1;
}
