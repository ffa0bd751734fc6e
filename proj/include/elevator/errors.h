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

#ifndef ELEVATOR_ERRORS_H
#define ELEVATOR_ERRORS_H

#include <stdexcept>
#include <string>

namespace elevator {

/// A request that is well formed but too large or otherwise impossible to
/// serve (enumeration bounds, unreachable overhead targets, ...).
struct InfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An internal consistency check failed. Signals a bug, not bad input.
struct InvariantViolation : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace elevator

#endif
