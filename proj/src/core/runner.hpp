#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace vgl {

struct RunOutcome {
    int exit_code = 0;       // 0 ok, 2 validation, 3 no-convergence, 4 io
    std::string run_dir;
    std::string message;
};

// Executes one CLI command against a raw (already overridden) JSON config.
// command: solve-planar | solve-radial | observables | self-test.
RunOutcome run_command(const std::string& command, const nlohmann::json& raw_config,
                       const std::string& out_dir, bool quiet);

// Sweep over axis in {G, lambda, N, g0}; one aggregated CSV row per value,
// rows in input order, per-row failures recorded without aborting the sweep.
RunOutcome run_sweep(const nlohmann::json& raw_config, const std::string& axis,
                     const std::vector<std::string>& values, const std::string& out_dir,
                     bool quiet);

}  // namespace vgl
