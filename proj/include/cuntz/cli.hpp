// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cuntz {

/// Exit codes: 0 pass, 1 input error, 2 assertion failure, 3 unsupported space, 4 mesh too coarse.
enum ExitCode : int { kExitOk = 0, kExitInput = 1, kExitAssertion = 2, kExitUnsupported = 3, kExitMesh = 4 };

/// Runs the command line `cuntz <args...>`; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cuntz
