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

#ifndef ELEVATOR_CODES_CLASSICAL_CODE_H
#define ELEVATOR_CODES_CLASSICAL_CODE_H

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "elevator/codes/binary_matrix.h"

namespace elevator {

enum class OuterCodeId {
    code_15_9_3,
    code_15_6_5,
    code_16_3_8,
};

/// Linear binary code defined by its parity-check matrix.
struct ClassicalCode {
    BinaryMatrix h;
    size_t n = 0;
    size_t k = 0;
    std::optional<size_t> d_claimed;
    std::string name;
    /// Non-fatal remarks about the construction (e.g. even repetition distance).
    std::vector<std::string> notes;

    /// Builds a code from H, computing k = n - rank(H).
    static ClassicalCode from_parity_check(BinaryMatrix h, std::string name, std::optional<size_t> d_claimed = {});
};

ClassicalCode builtin_outer(OuterCodeId id);
std::string_view outer_code_name(OuterCodeId id);
/// Accepts "code_15_9_3", "15_9_3" and "[15,9,3]" spellings.
std::optional<OuterCodeId> parse_outer_code_name(std::string_view name);
const std::vector<OuterCodeId> &all_outer_codes();

/// [d,1,d] repetition code with chain checks {i, i+1}.
ClassicalCode repetition(size_t d);

/// Minimum Hamming weight over nonzero codewords, by enumerating 2^k codewords.
/// Throws InfeasibleError when k > max_k.
size_t min_distance_bruteforce(const ClassicalCode &code, size_t max_k = 20);

/// True iff every column of H has weight at most 2.
bool is_matchable(const BinaryMatrix &h);

}  // namespace elevator

#endif
