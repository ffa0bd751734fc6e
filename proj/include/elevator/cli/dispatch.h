// Copyright 2026 Elevator Codes Contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ELEVATOR_CLI_DISPATCH_H
#define ELEVATOR_CLI_DISPATCH_H

#include <iosfwd>
#include <string>
#include <vector>

namespace elevator {

/// Process exit codes.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 2,
    kExitInfeasible = 3,
    kExitInvariant = 4,
};

/// Runs the command line `args` (without the program name), writing
/// primary output to `out` and diagnostics to `err`. Returns an ExitCode.
int dispatch(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace elevator

#endif
