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

#ifndef ELEVATOR_CODES_CSS_CODE_H
#define ELEVATOR_CODES_CSS_CODE_H

#include <vector>

#include "elevator/codes/binary_matrix.h"
#include "elevator/codes/classical_code.h"

namespace elevator {

/// CSS code in the convention where h_x holds the checks that detect X
/// errors (rows are supports of Z-type stabilizers) and h_z holds the checks
/// that detect Z errors (rows are supports of X-type stabilizers).
///
/// Physical qubit index of qubit q in block b is b * d_z + q.
struct CssCode {
    BinaryMatrix h_x;
    BinaryMatrix h_z;
    size_t n_blocks = 0;
    size_t n_phys = 0;
    size_t k = 0;
    size_t d_x = 0;
    size_t d_z = 0;
    /// Supports of X-type logical operators, one per logical qubit.
    std::vector<std::vector<size_t>> logical_x;
    /// Supports of Z-type logical operators, one per logical qubit.
    std::vector<std::vector<size_t>> logical_z;
    /// Outer codeword defining logical_x[l] (one bit per block).
    BinaryMatrix outer_codewords;
    /// Block carrying logical_z[l]; it is the l-th free column of rref(H).
    std::vector<size_t> logical_z_blocks;
};

/// Concatenates a phase-flip repetition code of distance d_z inside `outer`:
/// h_x = H(outer) ⊗ 1_{1×d_z}, h_z = I_n ⊗ H(rep(d_z)).
///
/// X logicals are single-qubit X on the first qubit of each block in a
/// canonical codeword of the outer code. Z logicals are full-block Z on the
/// free column paired with that codeword. d_x comes from d_claimed when
/// present, otherwise from brute force.
CssCode combine(const ClassicalCode &outer, size_t d_z);

/// h_x · h_z^T == 0 over GF(2).
bool css_commutes(const CssCode &code);

/// Checks the symplectic pairing of logical operators and their commutation
/// with every stabilizer.
bool logicals_valid(const CssCode &code);

}  // namespace elevator

#endif
