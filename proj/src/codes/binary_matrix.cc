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

#include "elevator/codes/binary_matrix.h"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace elevator {

namespace {

size_t words_for(size_t bits) {
    return (bits + 63) / 64;
}

}  // namespace

BinaryMatrix::BinaryMatrix(size_t rows, size_t cols)
    : rows_(rows), cols_(cols), words_per_row_(words_for(cols)), data_(rows * words_for(cols), 0) {
}

BinaryMatrix BinaryMatrix::identity(size_t n) {
    BinaryMatrix result(n, n);
    for (size_t k = 0; k < n; k++) {
        result.set(k, k);
    }
    return result;
}

BinaryMatrix BinaryMatrix::ones(size_t rows, size_t cols) {
    BinaryMatrix result(rows, cols);
    for (size_t r = 0; r < rows; r++) {
        for (size_t c = 0; c < cols; c++) {
            result.set(r, c);
        }
    }
    return result;
}

BinaryMatrix BinaryMatrix::from_supports(size_t cols, const std::vector<std::vector<size_t>> &row_supports) {
    BinaryMatrix result(row_supports.size(), cols);
    for (size_t r = 0; r < row_supports.size(); r++) {
        for (size_t c : row_supports[r]) {
            if (c >= cols) {
                throw std::invalid_argument(
                    "column " + std::to_string(c) + " out of range for " + std::to_string(cols) + " columns");
            }
            result.flip(r, c);
        }
    }
    return result;
}

BinaryMatrix BinaryMatrix::from_strings(const std::vector<std::string> &rows) {
    size_t cols = rows.empty() ? 0 : rows[0].size();
    BinaryMatrix result(rows.size(), cols);
    for (size_t r = 0; r < rows.size(); r++) {
        if (rows[r].size() != cols) {
            throw std::invalid_argument("ragged matrix: row " + std::to_string(r) + " has length " +
                                        std::to_string(rows[r].size()) + ", expected " + std::to_string(cols));
        }
        for (size_t c = 0; c < cols; c++) {
            char ch = rows[r][c];
            if (ch == '1') {
                result.set(r, c);
            } else if (ch != '0') {
                throw std::invalid_argument(std::string("unexpected matrix character '") + ch + "'");
            }
        }
    }
    return result;
}

BinaryMatrix BinaryMatrix::from_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    long long rows = -1;
    long long cols = -1;
    if (!(in >> rows >> cols) || rows < 0 || cols < 0) {
        throw std::invalid_argument("matrix text must start with 'rows cols'");
    }
    std::vector<std::string> lines;
    std::string token;
    while ((long long)lines.size() < rows && in >> token) {
        lines.push_back(token);
    }
    if ((long long)lines.size() != rows) {
        throw std::invalid_argument(
            "matrix text declares " + std::to_string(rows) + " rows but has " + std::to_string(lines.size()));
    }
    if (in >> token) {
        throw std::invalid_argument("trailing content after matrix rows");
    }
    if (rows == 0) {
        return BinaryMatrix(0, cols);
    }
    BinaryMatrix m = from_strings(lines);
    if ((long long)m.cols() != cols) {
        throw std::invalid_argument(
            "matrix text declares " + std::to_string(cols) + " columns but rows have " + std::to_string(m.cols()));
    }
    return m;
}

std::string BinaryMatrix::to_text() const {
    std::string out = std::to_string(rows_) + " " + std::to_string(cols_) + "\n";
    for (size_t r = 0; r < rows_; r++) {
        for (size_t c = 0; c < cols_; c++) {
            out.push_back(get(r, c) ? '1' : '0');
        }
        out.push_back('\n');
    }
    return out;
}

void BinaryMatrix::set(size_t r, size_t c, bool value) {
    uint64_t &w = data_[r * words_per_row_ + (c >> 6)];
    uint64_t bit = uint64_t{1} << (c & 63);
    if (value) {
        w |= bit;
    } else {
        w &= ~bit;
    }
}

void BinaryMatrix::flip(size_t r, size_t c) {
    data_[r * words_per_row_ + (c >> 6)] ^= uint64_t{1} << (c & 63);
}

void BinaryMatrix::xor_row_into(size_t src, size_t dst) {
    const uint64_t *s = data_.data() + src * words_per_row_;
    uint64_t *d = data_.data() + dst * words_per_row_;
    for (size_t w = 0; w < words_per_row_; w++) {
        d[w] ^= s[w];
    }
}

void BinaryMatrix::swap_rows(size_t a, size_t b) {
    if (a == b) {
        return;
    }
    std::swap_ranges(
        data_.begin() + a * words_per_row_, data_.begin() + (a + 1) * words_per_row_, data_.begin() + b * words_per_row_);
}

std::vector<size_t> BinaryMatrix::row_support(size_t r) const {
    std::vector<size_t> out;
    auto words = row_words(r);
    for (size_t w = 0; w < words.size(); w++) {
        uint64_t bits = words[w];
        while (bits) {
            out.push_back(w * 64 + std::countr_zero(bits));
            bits &= bits - 1;
        }
    }
    return out;
}

size_t BinaryMatrix::row_weight(size_t r) const {
    size_t total = 0;
    for (uint64_t w : row_words(r)) {
        total += std::popcount(w);
    }
    return total;
}

size_t BinaryMatrix::column_weight(size_t c) const {
    size_t total = 0;
    for (size_t r = 0; r < rows_; r++) {
        total += get(r, c);
    }
    return total;
}

bool BinaryMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](uint64_t w) { return w == 0; });
}

BinaryMatrix BinaryMatrix::transpose() const {
    BinaryMatrix result(cols_, rows_);
    for (size_t r = 0; r < rows_; r++) {
        for (size_t c : row_support(r)) {
            result.set(c, r);
        }
    }
    return result;
}

BinaryMatrix BinaryMatrix::operator*(const BinaryMatrix &rhs) const {
    if (cols_ != rhs.rows_) {
        throw std::invalid_argument(
            "shape mismatch in product: " + std::to_string(rows_) + "x" + std::to_string(cols_) + " times " +
            std::to_string(rhs.rows_) + "x" + std::to_string(rhs.cols_));
    }
    BinaryMatrix result(rows_, rhs.cols_);
    for (size_t r = 0; r < rows_; r++) {
        uint64_t *dst = result.data_.data() + r * result.words_per_row_;
        for (size_t k : row_support(r)) {
            const uint64_t *src = rhs.data_.data() + k * rhs.words_per_row_;
            for (size_t w = 0; w < result.words_per_row_; w++) {
                dst[w] ^= src[w];
            }
        }
    }
    return result;
}

BinaryMatrix BinaryMatrix::kron(const BinaryMatrix &rhs) const {
    BinaryMatrix result(rows_ * rhs.rows_, cols_ * rhs.cols_);
    for (size_t r = 0; r < rows_; r++) {
        for (size_t c : row_support(r)) {
            for (size_t r2 = 0; r2 < rhs.rows_; r2++) {
                for (size_t c2 : rhs.row_support(r2)) {
                    result.set(r * rhs.rows_ + r2, c * rhs.cols_ + c2);
                }
            }
        }
    }
    return result;
}

BinaryMatrix BinaryMatrix::vstack(const BinaryMatrix &below) const {
    if (below.cols_ != cols_) {
        throw std::invalid_argument("vstack column mismatch");
    }
    BinaryMatrix result(rows_ + below.rows_, cols_);
    std::copy(data_.begin(), data_.end(), result.data_.begin());
    std::copy(below.data_.begin(), below.data_.end(), result.data_.begin() + data_.size());
    return result;
}

RowEchelonForm BinaryMatrix::rref() const {
    RowEchelonForm out{*this, {}, {}};
    BinaryMatrix &m = out.reduced;
    size_t pivot_row = 0;
    for (size_t c = 0; c < cols_ && pivot_row < rows_; c++) {
        size_t found = rows_;
        for (size_t r = pivot_row; r < rows_; r++) {
            if (m.get(r, c)) {
                found = r;
                break;
            }
        }
        if (found == rows_) {
            out.free_columns.push_back(c);
            continue;
        }
        m.swap_rows(found, pivot_row);
        for (size_t r = 0; r < rows_; r++) {
            if (r != pivot_row && m.get(r, c)) {
                m.xor_row_into(pivot_row, r);
            }
        }
        out.pivot_columns.push_back(c);
        pivot_row++;
    }
    for (size_t c = out.pivot_columns.size() + out.free_columns.size(); c < cols_; c++) {
        out.free_columns.push_back(c);
    }
    return out;
}

size_t BinaryMatrix::rank() const {
    return rref().rank();
}

BinaryMatrix BinaryMatrix::null_space() const {
    RowEchelonForm ref = rref();
    BinaryMatrix basis(ref.free_columns.size(), cols_);
    for (size_t i = 0; i < ref.free_columns.size(); i++) {
        size_t f = ref.free_columns[i];
        basis.set(i, f);
        // Pivot variable of row r is determined by the free column entry in that row.
        for (size_t r = 0; r < ref.pivot_columns.size(); r++) {
            if (ref.reduced.get(r, f)) {
                basis.set(i, ref.pivot_columns[r]);
            }
        }
    }
    return basis;
}

std::vector<uint8_t> BinaryMatrix::multiply_vector(std::span<const uint8_t> v) const {
    if (v.size() != cols_) {
        throw std::invalid_argument("vector length does not match matrix columns");
    }
    std::vector<uint8_t> out(rows_, 0);
    for (size_t r = 0; r < rows_; r++) {
        uint8_t acc = 0;
        for (size_t c : row_support(r)) {
            acc ^= v[c] & 1;
        }
        out[r] = acc;
    }
    return out;
}

SparseBinaryMatrix SparseBinaryMatrix::from_columns(size_t num_rows, std::vector<std::vector<uint32_t>> columns) {
    SparseBinaryMatrix m;
    m.num_rows = num_rows;
    m.num_cols = columns.size();
    m.row_entries.resize(num_rows);
    for (size_t c = 0; c < columns.size(); c++) {
        std::sort(columns[c].begin(), columns[c].end());
        for (uint32_t r : columns[c]) {
            if (r >= num_rows) {
                throw std::invalid_argument("sparse entry row out of range");
            }
            m.row_entries[r].push_back((uint32_t)c);
        }
    }
    m.col_entries = std::move(columns);
    return m;
}

SparseBinaryMatrix SparseBinaryMatrix::from_dense(const BinaryMatrix &dense) {
    std::vector<std::vector<uint32_t>> columns(dense.cols());
    for (size_t r = 0; r < dense.rows(); r++) {
        for (size_t c : dense.row_support(r)) {
            columns[c].push_back((uint32_t)r);
        }
    }
    return from_columns(dense.rows(), std::move(columns));
}

BinaryMatrix SparseBinaryMatrix::to_dense() const {
    BinaryMatrix dense(num_rows, num_cols);
    for (size_t c = 0; c < num_cols; c++) {
        for (uint32_t r : col_entries[c]) {
            dense.flip(r, c);
        }
    }
    return dense;
}

size_t SparseBinaryMatrix::num_entries() const {
    size_t total = 0;
    for (const auto &col : col_entries) {
        total += col.size();
    }
    return total;
}

}  // namespace elevator
