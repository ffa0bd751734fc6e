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

#include "elevator/util/format.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace elevator {

std::string format_prob(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.5e", value);
    return buf;
}

std::string format_exact(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::scientific);
    if (ec != std::errc()) {
        throw std::runtime_error("failed to format double");
    }
    return std::string(buf, ptr);
}

double parse_double(std::string_view text) {
    double value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
        throw std::invalid_argument("expected a number, got '" + std::string(text) + "'");
    }
    return value;
}

double parse_probability(std::string_view text) {
    double value = parse_double(text);
    if (value < 0 || value > 1) {
        throw std::invalid_argument("probability out of [0, 1]: '" + std::string(text) + "'");
    }
    return value;
}

}  // namespace elevator
