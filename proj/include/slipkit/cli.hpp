#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace slipkit::cli {

// Process exit codes, shared by every subcommand.
enum ExitCode : int {
    kOk = 0,
    kFailure = 1,
    kUsage = 2,       // bad flags, bad config, invalid spec
    kDegenerate = 3,  // unreliable / degenerate contact
    kDataMismatch = 4,
};

// Runs `slipkit <segment|angle|eval-seg|sweep|synth> [flags]`. args[0] is
// the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace slipkit::cli
