#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace exwsd {

/// Exit codes of the command-line front end.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,  // bad flags or configuration
    kExitData = 2,   // unreadable or inconsistent corpus/model
};

/// Runs one `exwsd` invocation. `args` excludes the program name.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace exwsd
