#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qshir/driver.hpp"

namespace {

namespace fs = std::filesystem;

struct CommonOpts {
    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    std::optional<std::string> mode;
    double tol = qshir::kConstraintTol;
};

qshir::RunConfig load_with_overrides(const CommonOpts& opts) {
    qshir::RunConfig config = qshir::load_config(opts.config_path);
    if (opts.seed) {
        config.seed = *opts.seed;
    }
    if (opts.mode) {
        if (*opts.mode == "constraint") {
            config.mode = qshir::CorrectionMode::Constraint;
        } else if (*opts.mode == "unitary") {
            config.mode = qshir::CorrectionMode::Unitary;
        } else {
            throw qshir::ValidationError("--mode must be 'constraint' or 'unitary'");
        }
    }
    return config;
}

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("config", opts.config_path, "path to a run configuration file")
        ->required();
    cmd->add_option("--out-dir", opts.out_dir, "directory for report files");
    cmd->add_option("--seed", opts.seed, "override the config seed");
    cmd->add_option("--mode", opts.mode, "constraint|unitary (overrides the config)");
    cmd->add_option("--tol", opts.tol, "tolerance for constraint checks");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Teleportation simulator for two quantum spin Hall insulator rings"};
    app.require_subcommand(1);

    CommonOpts run_opts;
    CLI::App* run = app.add_subcommand("run", "single protocol execution");
    add_common(run, run_opts);

    CommonOpts sweep_opts;
    CLI::App* sweep = app.add_subcommand("sweep", "parameter sweep to CSV");
    add_common(sweep, sweep_opts);

    std::uint64_t selfcheck_seed = 42;
    CLI::App* selfcheck = app.add_subcommand("selfcheck", "run the invariant suites");
    selfcheck->add_option("--seed", selfcheck_seed, "seed for the random suites");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            const qshir::RunConfig config = load_with_overrides(run_opts);
            const std::string stem = fs::path(run_opts.config_path).stem().string();
            qshir::cmd_run(config, run_opts.out_dir, stem, std::cout, run_opts.tol);
            return qshir::kExitOk;
        }
        if (sweep->parsed()) {
            const qshir::RunConfig config = load_with_overrides(sweep_opts);
            const std::string stem = fs::path(sweep_opts.config_path).stem().string();
            qshir::cmd_sweep(config, sweep_opts.out_dir, stem, std::cout, sweep_opts.tol);
            return qshir::kExitOk;
        }
        return qshir::cmd_selfcheck(selfcheck_seed, std::cout);
    } catch (const qshir::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return qshir::kExitParse;
    } catch (const qshir::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return qshir::kExitValidation;
    } catch (const qshir::DegenerateStateError& e) {
        std::cerr << "degenerate configuration: " << e.what() << "\n";
        return qshir::kExitDegenerate;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return qshir::kExitFailure;
    }
}
