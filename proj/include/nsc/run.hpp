#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nsc/config.hpp"

namespace nsc {

inline const std::vector<std::string> experiment_names = {
    "simulate",      "picard",        "dispersive-fit", "strichartz-sweep",
    "vanishing-limit", "threshold-sweep", "asymptotic",  "batch"};

struct RunOutcome {
    int exit_code = 0; // 0 completed, 2 validation error, 3 numerical failure
    std::string verdict_line;
    std::vector<std::string> violations;
    std::vector<std::string> outputs;
};

// Dispatches to the experiment, persists outputs under output_dir
// (config snapshot, CSVs, JSON summary, run.json manifest) and returns the
// one-line verdict. Validation is total: every violated precondition is
// reported, not just the first.
RunOutcome run_experiment(const std::string& experiment, const Config& cfg,
                          const std::string& output_dir, std::int64_t seed_override = -1);

} // namespace nsc
