#ifndef GPFOCK_CLI_HPP
#define GPFOCK_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace gpfock {

// Runs one CLI command. Exit status 0 on success, 1 when a checked property
// is falsified, 2 on input errors, unknown subcommands or exhausted budgets.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gpfock

#endif
