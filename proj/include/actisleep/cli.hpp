#pragma once

#include <string>
#include <vector>

namespace actisleep {

/// Entry point for the command-line tool. Subcommands: analyze, evaluate,
/// calibrate, synth. Returns a process exit code; all errors are reported
/// on stderr, never thrown.
int run_cli(int argc, const char* const* argv);

/// Convenience overload for tests: args without the program name.
int run_cli(const std::vector<std::string>& args);

}  // namespace actisleep
