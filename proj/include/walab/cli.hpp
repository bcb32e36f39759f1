#ifndef WALAB_CLI_HPP
#define WALAB_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace walab {

// Runs one command-line invocation: args are the words after the program
// name. Returns the process exit code: 0 on success (including --help),
// 1 on domain errors (bad files, out-of-range instances, field mismatches),
// 2 on usage errors. All output is deterministic for fixed arguments.
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out,
                 std::ostream& err);

} // namespace walab

#endif
