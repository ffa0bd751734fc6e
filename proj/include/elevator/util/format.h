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

#ifndef ELEVATOR_UTIL_FORMAT_H
#define ELEVATOR_UTIL_FORMAT_H

#include <string>
#include <string_view>

namespace elevator {

/// Scientific notation with 6 significant digits, e.g. "1.00912e-03".
std::string format_prob(double value);

/// Shortest scientific representation that parses back to the same double.
/// Used by the circuit and DEM text formats.
std::string format_exact(double value);

/// Parses a probability in [0, 1]; throws std::invalid_argument otherwise.
double parse_probability(std::string_view text);

/// Parses any finite double; throws std::invalid_argument otherwise.
double parse_double(std::string_view text);

}  // namespace elevator

#endif
