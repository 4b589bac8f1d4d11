#pragma once

#include <iosfwd>

#include "pwk/cli/config.hpp"

namespace pwk::cli {

enum ExitCode { kOk = 0, kConfigError = 2, kComputationFailure = 3 };

// Each command writes its report to `out` and returns an exit code; errors
// propagate as exceptions and are mapped by run().
int cmd_lyapunov(const RunConfig& cfg, std::ostream& out);
int cmd_cycles(const RunConfig& cfg, std::ostream& out);
int cmd_portrait(const RunConfig& cfg, std::ostream& out);
int cmd_verify(const RunConfig& cfg, std::ostream& out);
int cmd_simulate(const RunConfig& cfg, std::ostream& out);

/// Dispatch by name with the exit-code mapping; messages go to `err`.
int run(const std::string& command, const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace pwk::cli

namespace pwk::cli {

/// Full command line: subcommand, flags, config file; flags override the config.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pwk::cli
