#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "lpflow/cli/config.hpp"

namespace lpflow::cli {

inline const std::vector<std::string> kCommands{"decay", "counterexample", "flow", "mhd", "probe", "besov"};

struct RunResult {
    std::vector<std::string> failures;
    std::vector<std::string> outputs;
    int exit_code() const { return failures.empty() ? 0 : 1; }
};

/// Runs `cfg.get("command")` writing into `out`: the CSVs and SVGs of the
/// command, config.txt (the persisted config, enough to re-run), manifest.txt
/// (config echo, versions, wall time) and failures.txt (one failed in-run
/// assertion per line, empty on success). Progress goes to `log`.
RunResult run_command(RunConfig cfg, const std::filesystem::path& out, std::ostream& log);

}  // namespace lpflow::cli
