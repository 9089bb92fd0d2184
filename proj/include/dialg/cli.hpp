#pragma once

#include <string>
#include <vector>

namespace dialg {

// Exit codes: 0 success, 1 false verification verdict, 2 usage or parse
// error, 3 resource limit exceeded.
struct CommandResult {
    int exit_code = 0;
    std::string out;
    std::string err;
};

// Runs one workbench subcommand; `args` excludes the program name. The
// layer cache directory comes from the CACHE_DIR environment variable.
CommandResult run_command(const std::vector<std::string>& args);

} // namespace dialg
