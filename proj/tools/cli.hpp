// cli.hpp: command-line front end, callable in-process for tests

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tisbm::cli {

enum ExitCode : int {
    kOk = 0,
    kInternal = 1,
    kUsage = 2,       // bad flags or malformed parameter document
    kDomain = 3,      // input outside a formula's domain
    kConvergence = 4, // solver failure (phase-scan: at least one failed point)
    kRefused = 5,     // regime has no closed-form waveform
    kMismatch = 6,    // oracle verification failed
};

/// args excludes the program name. Output goes to `out` unless --out is given.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tisbm::cli
