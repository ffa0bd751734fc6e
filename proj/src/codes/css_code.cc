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

#include "elevator/codes/css_code.h"

#include <stdexcept>

namespace elevator {

namespace {

size_t overlap(const std::vector<size_t> &a, const std::vector<uint8_t> &b) {
    size_t total = 0;
    for (size_t q : a) {
        total += b[q];
    }
    return total;
}

std::vector<uint8_t> indicator(const std::vector<size_t> &support, size_t n) {
    std::vector<uint8_t> out(n, 0);
    for (size_t q : support) {
        out[q] ^= 1;
    }
    return out;
}

}  // namespace

CssCode combine(const ClassicalCode &outer, size_t d_z) {
    if (d_z == 0) {
        throw std::invalid_argument("d_z must be at least 1");
    }
    size_t n = outer.n;
    CssCode code;
    code.n_blocks = n;
    code.d_z = d_z;
    code.n_phys = n * d_z;
    code.h_x = outer.h.kron(BinaryMatrix::ones(1, d_z));
    code.h_z = BinaryMatrix::identity(n).kron(repetition(d_z).h);
    code.d_x = outer.d_claimed ? *outer.d_claimed : min_distance_bruteforce(outer);

    RowEchelonForm ref = outer.h.rref();
    code.outer_codewords = outer.h.null_space();
    code.k = code.outer_codewords.rows();
    code.logical_z_blocks = ref.free_columns;
    for (size_t l = 0; l < code.k; l++) {
        std::vector<size_t> xs;
        for (size_t b : code.outer_codewords.row_support(l)) {
            xs.push_back(b * d_z);
        }
        code.logical_x.push_back(std::move(xs));
        std::vector<size_t> zs;
        for (size_t q = 0; q < d_z; q++) {
            zs.push_back(code.logical_z_blocks[l] * d_z + q);
        }
        code.logical_z.push_back(std::move(zs));
    }
    return code;
}

bool css_commutes(const CssCode &code) {
    if (code.h_x.cols() != code.h_z.cols()) {
        return false;
    }
    return (code.h_x * code.h_z.transpose()).is_zero();
}

bool logicals_valid(const CssCode &code) {
    if (code.logical_x.size() != code.k || code.logical_z.size() != code.k) {
        return false;
    }
    for (size_t i = 0; i < code.k; i++) {
        std::vector<uint8_t> x = indicator(code.logical_x[i], code.n_phys);
        // X logicals must commute with Z-type stabilizers (rows of h_x).
        for (uint8_t bit : code.h_x.multiply_vector(x)) {
            if (bit) {
                return false;
            }
        }
        for (size_t j = 0; j < code.k; j++) {
            bool odd = overlap(code.logical_z[j], x) & 1;
            if (odd != (i == j)) {
                return false;
            }
        }
        std::vector<uint8_t> z = indicator(code.logical_z[i], code.n_phys);
        for (uint8_t bit : code.h_z.multiply_vector(z)) {
            if (bit) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace elevator
