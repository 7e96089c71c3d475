#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "eit/cli/config.hpp"
#include "eit/cli/presets.hpp"
#include "eit/cli/run.hpp"
#include "eit/cli/selftest.hpp"

using namespace eit::cli;

namespace {

enum Exit { ok = 0, failure = 1, validation = 2, numerical = 3, selftest_failed = 4 };

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"eitlab: EIT, slow-light and polariton figure presets"};
    app.require_subcommand(0, 1);
    bool list = false;
    app.add_flag("--list-presets", list, "List figure presets and models");

    std::string preset, config, out, format;
    int jobs = 0;
    CLI::App* run_cmd = app.add_subcommand("run", "Run a preset or a config file");
    run_cmd->add_option("--preset", preset, "Figure preset name");
    run_cmd->add_option("--config", config, "TOML config (or a manifest.json from an earlier run)");
    run_cmd->add_option("--out", out, "Output directory (default $EITLAB_OUT, else ./eitlab_out)");
    run_cmd->add_option("--format", format, "csv, svg or both")->check(CLI::IsMember({"csv", "svg", "both"}));
    run_cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

    std::string corrupt;
    CLI::App* self_cmd = app.add_subcommand("selftest", "Fast invariant checks");
    self_cmd->add_option("--corrupt", corrupt, "Test hook: perturb the reference constant of the named check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? ok : validation;
    }

    try {
        if (list) {
            for (const Preset& p : presets())
                std::cout << p.name << "  [" << p.model << "]  " << p.description << "\n";
            std::cout << "\nmodels (usable as `model = \"...\"` in a config):\n";
            for (const Model& m : models())
                std::cout << "  " << m.name << "  " << m.description << "\n";
            return ok;
        }
        if (*self_cmd) {
            if (corrupt.empty())
                if (const char* env = std::getenv("EITLAB_SELFTEST_CORRUPT"))
                    corrupt = env;
            return print_selftest(selftest(corrupt), std::cout) ? ok : selftest_failed;
        }
        if (*run_cmd) {
            RunRequest req;
            if (!config.empty())
                req.config = read_run_config(load_document(config));
            if (!preset.empty()) {
                if (!req.config.model.empty())
                    throw ConfigError("preset", "--preset conflicts with the model given in the config");
                req.config.preset = preset;
            }
            if (!out.empty())
                req.out_dir = out;
            else if (!req.config.out_dir.empty())
                req.out_dir = req.config.out_dir;
            else if (const char* env = std::getenv("EITLAB_OUT"))
                req.out_dir = env;
            else
                req.out_dir = "eitlab_out";
            req.format = parse_format(!format.empty() ? format : !req.config.format.empty() ? req.config.format : "csv");
            req.jobs = jobs > 0 ? jobs : req.config.jobs > 0 ? req.config.jobs : 1;
            RunReport r = run(req);
            for (const auto& f : r.files)
                std::cout << f.string() << "\n";
            std::cout << r.manifest.string() << "\n";
            for (const std::string& w : r.warnings)
                std::cerr << "warning: " << w << "\n";
            return ok;
        }
        std::cout << app.help();
        return validation;
    } catch (const eit::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return validation;
    } catch (const eit::ConvergenceError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return numerical;
    } catch (const eit::SingularError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return numerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return failure;
    }
}
