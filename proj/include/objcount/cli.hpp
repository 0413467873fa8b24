#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace objcount::cli {

/// Process exit codes.
enum ExitCode : int {
    kOk = 0,
    kIoError = 1,
    kConfigError = 2,
    kPipelineError = 3,
};

/// Entry point shared by the objcount binary and the tests. args[0] is the
/// program name. Payload goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace objcount::cli
