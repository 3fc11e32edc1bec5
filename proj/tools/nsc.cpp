// Experiment driver: nsc <experiment> --config <file> [--output-dir <dir>]
//                    [--jobs N] [--seed S]
// Exit codes: 0 completed, 2 validation error, 3 numerical failure.

#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "nsc/exec.hpp"
#include "nsc/run.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"Navier-Stokes-Coriolis pseudo-spectral experiment lab"};
    app.require_subcommand(1);

    std::string config_path, output_dir = "runs/out";
    int jobs = 0;
    std::int64_t seed = -1;
    if (const char* env = std::getenv("NSC_JOBS")) jobs = std::atoi(env);

    for (const auto& name : nsc::experiment_names) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "experiment config file")->required();
        sub->add_option("--output-dir", output_dir, "run directory");
        sub->add_option("--jobs", jobs, "worker threads (default NSC_JOBS or all)");
        sub->add_option("--seed", seed, "override the config's initial-data seed");
    }

    CLI11_PARSE(app, argc, argv);
    if (jobs > 0) nsc::set_exec_threads(jobs);

    nsc::Config cfg;
    try {
        cfg = nsc::Config::parse_file(config_path);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    const std::string experiment = app.get_subcommands().front()->get_name();
    nsc::RunOutcome out = nsc::run_experiment(experiment, cfg, output_dir, seed);
    if (out.exit_code == 2) {
        std::cerr << "validation failed (" << out.violations.size() << " violation(s)):\n";
        for (const auto& v : out.violations) std::cerr << "  - " << v << "\n";
        return 2;
    }
    std::cout << out.verdict_line << "\n";
    return out.exit_code;
}
