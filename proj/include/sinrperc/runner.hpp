#pragma once
#include <string>
#include <vector>

#include "sinrperc/config.hpp"

namespace sinrperc {

struct RunOutcome {
    int exit_code = 0;               // 0 ok, 4 budget exceeded
    std::vector<std::string> outputs;
    std::string summary;             // human-readable lines
};

// out_dir resolution honors the SINRPERC_OUT_ROOT environment variable for
// relative paths
std::string resolve_out_dir(const std::string& out_dir);

// validates, runs the configured experiment, writes outputs
RunOutcome run_experiment(ExperimentConfig cfg);

// re-runs the config embedded in an output file and byte-compares the result
struct ReplayOutcome {
    bool match = false;
    std::string replay_path;
    std::string summary;
};
ReplayOutcome replay_output(const std::string& path);

}  // namespace sinrperc
