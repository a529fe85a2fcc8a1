// uhp: verification suites and tables for torsion equivariant line-bundle
// data on the p-adic upper half plane at desk scale.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "uhp/suites.hpp"

int main(int argc, char** argv) {
    CLI::App app{"p-adic upper half plane toolkit"};
    app.require_subcommand(0, 1);

    uhp::RunConfig cfg;
    // defaults may come from a JSON config file named by UHP_CONFIG
    if (const char* path = std::getenv("UHP_CONFIG")) {
        std::ifstream in(path);
        if (in) {
            try {
                auto j = nlohmann::json::parse(in);
                if (j.contains("p")) cfg.p = j["p"].get<uhp::u64>();
                if (j.contains("precision")) cfg.precision = j["precision"].get<int>();
                if (j.contains("depth")) cfg.depth = j["depth"].get<int>();
                if (j.contains("d")) cfg.d = j["d"].get<uhp::i64>();
                if (j.contains("e")) cfg.e = j["e"].get<uhp::i64>();
                if (j.contains("level")) cfg.level = j["level"].get<int>();
                if (j.contains("samples")) cfg.samples = j["samples"].get<int>();
                if (j.contains("seed")) cfg.seed = j["seed"].get<uhp::u64>();
            } catch (const std::exception& ex) {
                std::cerr << "bad config file: " << ex.what() << "\n";
                return 2;
            }
        }
    }

    std::string out_path;
    bool summary = false;
    std::vector<std::string> wanted;

    app.add_option("--p,--q", cfg.p, "prime (residue size q = p)");
    app.add_option("--precision", cfg.precision, "working precision in digits");
    app.add_option("--depth", cfg.depth, "tree depth budget (0..4)");
    app.add_option("--d", cfg.d, "torsion order d (default q+1)");
    app.add_option("--e", cfg.e, "exponent e (default q-1)");
    app.add_option("--level", cfg.level, "residue level for character groups");
    app.add_option("--samples", cfg.samples, "sample count for pointwise checks");
    app.add_option("--seed", cfg.seed, "RNG seed");
    app.add_option("--out", out_path, "write the JSON report to this path");
    app.add_flag("--summary", summary, "print one PASS/FAIL line per check");

    for (const auto& name : uhp::suite_names())
        app.add_subcommand(name, "run the '" + name + "' suite")->fallthrough();
    auto* all = app.add_subcommand("all", "run every suite");
    all->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    for (const auto* sub : app.get_subcommands())
        if (sub != all) wanted.push_back(sub->get_name());
    if (all->parsed()) wanted = uhp::suite_names();
    if (wanted.empty()) {
        std::cerr << "no suite selected; try one of:";
        for (const auto& n : uhp::suite_names()) std::cerr << " " << n;
        std::cerr << " | all\n";
        return 2;
    }

    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) {
            std::cerr << "cannot open " << out_path << "\n";
            return 2;
        }
        os = &file;
    }

    bool ok = true;
    try {
        for (const auto& name : wanted) {
            auto rep = uhp::run_suite(name, cfg);
            ok = ok && rep.pass();
            if (summary)
                *os << rep.to_summary();
            else
                *os << rep.to_json(cfg) << "\n";
        }
    } catch (const uhp::DomainError& ex) {
        std::cerr << "usage error: " << ex.what() << "\n";
        return 2;
    } catch (const std::exception& ex) {
        std::cerr << "check failure: " << ex.what() << "\n";
        return 1;
    }
    return ok ? 0 : 1;
}
