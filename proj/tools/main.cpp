#include "lagspec/cli.hpp"
#include "lagspec/errors.hpp"

#include "CLI11.hpp"

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Spectral metrics, tongue constructions and cone checks for exact curves in the annulus"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    std::uint64_t seed = 0;
    bool verify_only = false;
    const char* kinds[] = {"pair-metrics", "peano-run", "support-sweep", "coisotropy-check", "property-suite"};
    for (const char* kind : kinds) {
        auto* sub = app.add_subcommand(kind);
        sub->add_option("--config", config_path, "experiment config (JSON, schema v1)");
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--seed", seed, "seed for randomized suites");
        sub->add_flag("--verify-only", verify_only, "recompute and compare with the stored report; write nothing");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    const std::string kind = app.get_subcommands().front()->get_name();

    try {
        lagspec::ExperimentConfig cfg;
        if (!config_path.empty()) {
            cfg = lagspec::config_from_json(lagspec::load_json_file(config_path), config_path);
            if (cfg.kind != kind) throw lagspec::InputError(config_path + ": config is for '" + cfg.kind + "', not '" + kind + "'");
        }
        cfg.kind = kind;
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (app.get_subcommands().front()->count("--seed")) cfg.seed = seed;
        cfg.verify_only = verify_only;
        return lagspec::execute(cfg, std::cout);
    } catch (const lagspec::BoundViolation& e) {
        std::cerr << "certificate failure: " << e.what() << "\n";
        return 1;
    } catch (const lagspec::Error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
