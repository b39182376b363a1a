#ifndef AZETA_TOOLS_CLI_HPP
#define AZETA_TOOLS_CLI_HPP
#include <iosfwd>
#include <string>
#include <vector>

namespace azeta::cli
{

enum ExitCode : int { ok = 0, identity_failure = 1, usage = 2, pole = 3 };

// Runs the command line given without the program name; returns the exit code.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

// Names accepted by --fn, in the order --list-fns prints them.
std::vector<std::string> function_names();

} // namespace azeta::cli

#endif
