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

#include "elevator/codes/classical_code.h"

#include <bit>
#include <stdexcept>

#include "elevator/errors.h"

namespace elevator {

ClassicalCode ClassicalCode::from_parity_check(BinaryMatrix h, std::string name, std::optional<size_t> d_claimed) {
    ClassicalCode code;
    code.n = h.cols();
    code.k = code.n - h.rank();
    code.h = std::move(h);
    code.name = std::move(name);
    code.d_claimed = d_claimed;
    return code;
}

ClassicalCode builtin_outer(OuterCodeId id) {
    switch (id) {
        case OuterCodeId::code_15_9_3:
            return ClassicalCode::from_parity_check(
                BinaryMatrix::from_strings({
                    "101011000000000",
                    "000000100100101",
                    "000001001100010",
                    "000010000011100",
                    "000100011001000",
                    "011100100000000",
                }),
                "code_15_9_3",
                3);
        case OuterCodeId::code_15_6_5:
            return ClassicalCode::from_parity_check(
                BinaryMatrix::from_strings({
                    "100011000000000",
                    "110000100000000",
                    "011000010000000",
                    "001100001000000",
                    "000110000100000",
                    "000000000110001",
                    "000001000000110",
                    "000000100011000",
                    "000000001001100",
                    "000000010000011",
                }),
                "code_15_6_5",
                5);
        case OuterCodeId::code_16_3_8:
            return ClassicalCode::from_parity_check(
                BinaryMatrix::from_strings({
                    "1000111000000000",
                    "1100000000000000",
                    "0110000000000000",
                    "0011000000000000",
                    "0000100100000000",
                    "0000000110000000",
                    "0000000011000000",
                    "0000010000100000",
                    "0000001000000100",
                    "0000000000110000",
                    "0000000000011000",
                    "0000000000000110",
                    "0000000000000011",
                }),
                "code_16_3_8",
                8);
    }
    throw std::invalid_argument("unknown outer code id");
}

std::string_view outer_code_name(OuterCodeId id) {
    switch (id) {
        case OuterCodeId::code_15_9_3:
            return "code_15_9_3";
        case OuterCodeId::code_15_6_5:
            return "code_15_6_5";
        case OuterCodeId::code_16_3_8:
            return "code_16_3_8";
    }
    return "unknown";
}

std::optional<OuterCodeId> parse_outer_code_name(std::string_view name) {
    for (OuterCodeId id : all_outer_codes()) {
        std::string_view full = outer_code_name(id);
        std::string_view short_name = full.substr(5);
        std::string bracketed = "[" + std::string(short_name) + "]";
        for (char &c : bracketed) {
            if (c == '_') {
                c = ',';
            }
        }
        if (name == full || name == short_name || name == bracketed) {
            return id;
        }
    }
    return std::nullopt;
}

const std::vector<OuterCodeId> &all_outer_codes() {
    static const std::vector<OuterCodeId> ids{
        OuterCodeId::code_15_9_3, OuterCodeId::code_15_6_5, OuterCodeId::code_16_3_8};
    return ids;
}

ClassicalCode repetition(size_t d) {
    if (d == 0) {
        throw std::invalid_argument("repetition distance must be at least 1");
    }
    std::vector<std::vector<size_t>> rows;
    for (size_t i = 0; i + 1 < d; i++) {
        rows.push_back({i, i + 1});
    }
    ClassicalCode code =
        ClassicalCode::from_parity_check(BinaryMatrix::from_supports(d, rows), "repetition_" + std::to_string(d), d);
    if (d % 2 == 0) {
        code.notes.push_back("even distance " + std::to_string(d) + " cannot break ties in majority decoding");
    }
    return code;
}

size_t min_distance_bruteforce(const ClassicalCode &code, size_t max_k) {
    BinaryMatrix basis = code.h.null_space();
    size_t k = basis.rows();
    if (k == 0) {
        throw std::invalid_argument("code '" + code.name + "' has no nonzero codewords");
    }
    if (k > max_k) {
        throw InfeasibleError(
            "distance enumeration needs 2^" + std::to_string(k) + " codewords; limit is k <= " + std::to_string(max_k));
    }
    size_t words = basis.words_per_row();
    std::vector<uint64_t> current(words, 0);
    size_t best = code.n + 1;
    // Gray-code walk: each step flips exactly one basis vector into the running sum.
    for (uint64_t step = 1; step < (uint64_t{1} << k); step++) {
        size_t flip = std::countr_zero(step);
        auto row = basis.row_words(flip);
        size_t weight = 0;
        for (size_t w = 0; w < words; w++) {
            current[w] ^= row[w];
            weight += std::popcount(current[w]);
        }
        if (weight < best) {
            best = weight;
        }
    }
    return best;
}

bool is_matchable(const BinaryMatrix &h) {
    for (size_t c = 0; c < h.cols(); c++) {
        if (h.column_weight(c) > 2) {
            return false;
        }
    }
    return true;
}

}  // namespace elevator
