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

#ifndef ELEVATOR_CODES_BINARY_MATRIX_H
#define ELEVATOR_CODES_BINARY_MATRIX_H

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace elevator {

struct RowEchelonForm;

/// Dense matrix over GF(2). Rows are bit-packed into 64-bit words.
///
/// Intended for code-sized matrices (up to a few thousand columns). Large
/// sparse matrices such as detector error model check matrices use
/// SparseBinaryMatrix instead.
class BinaryMatrix {
   public:
    BinaryMatrix() = default;
    BinaryMatrix(size_t rows, size_t cols);

    static BinaryMatrix identity(size_t n);
    static BinaryMatrix ones(size_t rows, size_t cols);
    static BinaryMatrix from_supports(size_t cols, const std::vector<std::vector<size_t>> &row_supports);
    /// Rows given as strings of '0'/'1' characters; all rows must have equal length.
    static BinaryMatrix from_strings(const std::vector<std::string> &rows);

    /// Plain-text format: first line "rows cols", then one 0/1 string per row.
    static BinaryMatrix from_text(std::string_view text);
    std::string to_text() const;

    size_t rows() const {
        return rows_;
    }
    size_t cols() const {
        return cols_;
    }
    size_t words_per_row() const {
        return words_per_row_;
    }

    bool get(size_t r, size_t c) const {
        return (data_[r * words_per_row_ + (c >> 6)] >> (c & 63)) & 1;
    }
    void set(size_t r, size_t c, bool value = true);
    void flip(size_t r, size_t c);

    std::span<const uint64_t> row_words(size_t r) const {
        return {data_.data() + r * words_per_row_, words_per_row_};
    }
    std::span<uint64_t> row_words(size_t r) {
        return {data_.data() + r * words_per_row_, words_per_row_};
    }

    /// row[dst] ^= row[src]
    void xor_row_into(size_t src, size_t dst);
    void swap_rows(size_t a, size_t b);

    std::vector<size_t> row_support(size_t r) const;
    size_t row_weight(size_t r) const;
    size_t column_weight(size_t c) const;
    bool is_zero() const;

    BinaryMatrix transpose() const;
    /// Matrix product over GF(2).
    BinaryMatrix operator*(const BinaryMatrix &rhs) const;
    /// Kronecker product this ⊗ rhs.
    BinaryMatrix kron(const BinaryMatrix &rhs) const;
    /// Stacks rows of `below` under this matrix. Column counts must match.
    BinaryMatrix vstack(const BinaryMatrix &below) const;

    size_t rank() const;
    RowEchelonForm rref() const;
    /// Canonical null-space basis: one row per free column of the reduced row
    /// echelon form (ascending), with that free column set and the other free
    /// columns clear.
    BinaryMatrix null_space() const;

    /// H·v over GF(2) for v given as a 0/1 byte vector of length cols().
    std::vector<uint8_t> multiply_vector(std::span<const uint8_t> v) const;

    bool operator==(const BinaryMatrix &other) const = default;

   private:
    size_t rows_ = 0;
    size_t cols_ = 0;
    size_t words_per_row_ = 0;
    std::vector<uint64_t> data_;
};

struct RowEchelonForm {
    BinaryMatrix reduced;
    std::vector<size_t> pivot_columns;
    std::vector<size_t> free_columns;

    size_t rank() const {
        return pivot_columns.size();
    }
};

/// Sparse GF(2) matrix stored as both row and column adjacency lists.
struct SparseBinaryMatrix {
    size_t num_rows = 0;
    size_t num_cols = 0;
    std::vector<std::vector<uint32_t>> row_entries;
    std::vector<std::vector<uint32_t>> col_entries;

    static SparseBinaryMatrix from_columns(size_t num_rows, std::vector<std::vector<uint32_t>> columns);
    static SparseBinaryMatrix from_dense(const BinaryMatrix &dense);
    BinaryMatrix to_dense() const;
    size_t num_entries() const;
};

}  // namespace elevator

#endif
