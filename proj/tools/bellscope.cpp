// bellscope: verification and sweep front end for measurement-dependent
// hidden-variable models of two-party spin correlations.
//
//   bellscope <verify-singlet|measure|tables|tradeoff|check-model> [options]
//
// Exit codes: 0 all checks pass, 1 a verification check failed, 2 bad config.

#include "bellscope/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv)
{
    using namespace bellscope::cli;

    RunConfig cfg;
    CLI::App app{"Measurement-dependence verification for hidden-variable models of spin correlations"};
    app.add_option("command", cfg.command, "verify-singlet | measure | tables | tradeoff | check-model")
        ->required()
        ->check(CLI::IsMember(command_names()));
    app.add_option("--samples", cfg.samples, "Monte Carlo sample count")->capture_default_str();
    app.add_option("--grid", cfg.grid, "grid size (angle grid, p grid, or M grid depending on command)");
    app.add_option("--trials", cfg.trials, "random quads screened by `measure`")->capture_default_str();
    app.add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    app.add_option("--tol", cfg.tol, "verification tolerance (command-specific default)");
    app.add_option("--format", cfg.format, "json or csv")->capture_default_str();
    app.add_option("--out", cfg.output_path, "output path (default: stdout)");
    app.add_option("--model", cfg.model, "singlet or bell-uniform")->capture_default_str();
    app.add_option("--model-file", cfg.model_file, "discrete model JSON for check-model");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfigError;
    }
    return run(cfg, std::cout, std::cerr);
}
