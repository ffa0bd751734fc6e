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

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "elevator/codes/binary_matrix.h"
#include "elevator/codes/classical_code.h"
#include "elevator/codes/css_code.h"
#include "elevator/errors.h"

namespace elevator {
namespace {

using Dense = std::vector<std::vector<int>>;

Dense to_dense(const BinaryMatrix &m) {
    Dense d(m.rows(), std::vector<int>(m.cols()));
    for (size_t r = 0; r < m.rows(); r++) {
        for (size_t c = 0; c < m.cols(); c++) {
            d[r][c] = m.get(r, c);
        }
    }
    return d;
}

// Textbook elimination on int rows, independent of the packed implementation.
size_t naive_rank(Dense a) {
    size_t rank = 0;
    size_t cols = a.empty() ? 0 : a[0].size();
    for (size_t c = 0; c < cols && rank < a.size(); c++) {
        size_t piv = rank;
        while (piv < a.size() && a[piv][c] == 0) {
            piv++;
        }
        if (piv == a.size()) {
            continue;
        }
        std::swap(a[piv], a[rank]);
        for (size_t r = 0; r < a.size(); r++) {
            if (r != rank && a[r][c]) {
                for (size_t j = 0; j < cols; j++) {
                    a[r][j] ^= a[rank][j];
                }
            }
        }
        rank++;
    }
    return rank;
}

int dot(const std::vector<int> &a, const std::vector<int> &b) {
    int s = 0;
    for (size_t i = 0; i < a.size(); i++) {
        s ^= a[i] & b[i];
    }
    return s;
}

// Minimum weight over all nonzero x with H x = 0, by enumerating all 2^n words.
size_t naive_distance(const BinaryMatrix &h) {
    Dense d = to_dense(h);
    size_t n = h.cols();
    size_t best = n + 1;
    for (uint64_t x = 1; x < (uint64_t{1} << n); x++) {
        bool ok = true;
        for (const auto &row : d) {
            int s = 0;
            for (size_t c = 0; c < n; c++) {
                s ^= row[c] & int((x >> c) & 1);
            }
            if (s) {
                ok = false;
                break;
            }
        }
        if (ok) {
            best = std::min<size_t>(best, std::popcount(x));
        }
    }
    return best;
}

BinaryMatrix random_matrix(std::mt19937_64 &rng, size_t rows, size_t cols, double density) {
    std::bernoulli_distribution bit(density);
    BinaryMatrix m(rows, cols);
    for (size_t r = 0; r < rows; r++) {
        for (size_t c = 0; c < cols; c++) {
            if (bit(rng)) {
                m.set(r, c);
            }
        }
    }
    return m;
}

TEST(BinaryMatrix, RankAgreesWithNaiveEliminationOnRandomMatrices) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 300; trial++) {
        size_t rows = 1 + rng() % 20;
        size_t cols = 1 + rng() % 20;
        double density = 0.1 + 0.8 * (double)(rng() % 100) / 100.0;
        BinaryMatrix m = random_matrix(rng, rows, cols, density);
        size_t r = naive_rank(to_dense(m));
        ASSERT_EQ(m.rank(), r);
        ASSERT_LE(m.rank(), std::min(rows, cols));
        ASSERT_EQ(m.rref().rank(), r);
    }
}

TEST(BinaryMatrix, NullSpaceIsAnnihilatedAndComplete) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 200; trial++) {
        size_t rows = 1 + rng() % 20;
        size_t cols = 1 + rng() % 20;
        BinaryMatrix m = random_matrix(rng, rows, cols, 0.4);
        BinaryMatrix ns = m.null_space();
        ASSERT_EQ(ns.rows(), cols - naive_rank(to_dense(m)));
        ASSERT_EQ(naive_rank(to_dense(ns)), ns.rows());
        Dense dm = to_dense(m);
        Dense dn = to_dense(ns);
        for (const auto &v : dn) {
            for (const auto &row : dm) {
                ASSERT_EQ(dot(row, v), 0);
            }
        }
    }
}

TEST(BinaryMatrix, ProductKronAndTransposeMatchDenseArithmetic) {
    std::mt19937_64 rng(13);
    BinaryMatrix a = random_matrix(rng, 5, 7, 0.5);
    BinaryMatrix b = random_matrix(rng, 7, 4, 0.5);
    Dense da = to_dense(a);
    Dense db = to_dense(b);
    BinaryMatrix ab = a * b;
    for (size_t i = 0; i < 5; i++) {
        for (size_t j = 0; j < 4; j++) {
            int s = 0;
            for (size_t k = 0; k < 7; k++) {
                s ^= da[i][k] & db[k][j];
            }
            EXPECT_EQ(ab.get(i, j), s);
        }
    }
    BinaryMatrix k = a.kron(b);
    ASSERT_EQ(k.rows(), 35u);
    ASSERT_EQ(k.cols(), 28u);
    for (size_t i = 0; i < 35; i++) {
        for (size_t j = 0; j < 28; j++) {
            EXPECT_EQ(k.get(i, j), da[i / 7][j / 4] && db[i % 7][j % 4]);
        }
    }
    EXPECT_EQ(a.transpose().transpose(), a);
}

TEST(BinaryMatrix, TextRoundTrip) {
    BinaryMatrix m = BinaryMatrix::from_strings({"1010", "0111"});
    EXPECT_EQ(BinaryMatrix::from_text(m.to_text()), m);
    EXPECT_THROW(BinaryMatrix::from_strings({"10", "1"}), std::invalid_argument);
    EXPECT_THROW(BinaryMatrix::from_text("2 2\n10\n1x\n"), std::invalid_argument);
}

TEST(ClassicalCode, BuiltinShapes) {
    ClassicalCode c1 = builtin_outer(OuterCodeId::code_15_9_3);
    EXPECT_EQ(c1.h.rows(), 6u);
    EXPECT_EQ(c1.h.cols(), 15u);
    EXPECT_EQ(c1.h.row_support(0), (std::vector<size_t>{0, 2, 4, 5}));
    EXPECT_EQ(c1.k, 9u);

    ClassicalCode c2 = builtin_outer(OuterCodeId::code_15_6_5);
    EXPECT_EQ(c2.k, 15 - naive_rank(to_dense(c2.h)));
    EXPECT_EQ(c2.k, 6u);

    ClassicalCode c3 = builtin_outer(OuterCodeId::code_16_3_8);
    EXPECT_EQ(c3.h.rows(), 13u);
    EXPECT_EQ(c3.h.cols(), 16u);
    EXPECT_EQ(c3.k, 3u);
}

TEST(ClassicalCode, BuiltinDistancesAndMatchability) {
    for (OuterCodeId id : all_outer_codes()) {
        ClassicalCode c = builtin_outer(id);
        size_t d = min_distance_bruteforce(c);
        ASSERT_TRUE(c.d_claimed.has_value());
        EXPECT_EQ(d, *c.d_claimed) << c.name;
        EXPECT_EQ(d, naive_distance(c.h)) << c.name;
        EXPECT_TRUE(is_matchable(c.h)) << c.name;
        for (size_t col = 0; col < c.n; col++) {
            EXPECT_LE(c.h.column_weight(col), 2u);
        }
        EXPECT_EQ(parse_outer_code_name(outer_code_name(id)), id);
    }
    EXPECT_EQ(min_distance_bruteforce(builtin_outer(OuterCodeId::code_15_9_3)), 3u);
    EXPECT_EQ(min_distance_bruteforce(builtin_outer(OuterCodeId::code_15_6_5)), 5u);
    EXPECT_EQ(min_distance_bruteforce(builtin_outer(OuterCodeId::code_16_3_8)), 8u);
    EXPECT_FALSE(parse_outer_code_name("code_7_4_3").has_value());
}

TEST(ClassicalCode, Repetition) {
    ClassicalCode r1 = repetition(1);
    EXPECT_EQ(r1.h.rows(), 0u);
    EXPECT_EQ(r1.k, 1u);

    ClassicalCode r3 = repetition(3);
    ASSERT_EQ(r3.h.rows(), 2u);
    EXPECT_EQ(r3.h.row_support(0), (std::vector<size_t>{0, 1}));
    EXPECT_EQ(r3.h.row_support(1), (std::vector<size_t>{1, 2}));

    ClassicalCode r9 = repetition(9);
    EXPECT_EQ(r9.h.rows(), 8u);
    EXPECT_EQ(r9.h.cols(), 9u);
    EXPECT_EQ(min_distance_bruteforce(r9), 9u);
    EXPECT_EQ(min_distance_bruteforce(repetition(7)), 7u);
    EXPECT_THROW(repetition(0), std::invalid_argument);
}

TEST(ClassicalCode, Matchability) {
    EXPECT_FALSE(is_matchable(BinaryMatrix::ones(3, 3)));
    EXPECT_TRUE(is_matchable(repetition(5).h));
}

TEST(ClassicalCode, DistanceRefusesLargeDimension) {
    BinaryMatrix h(1, 30);
    for (size_t c = 0; c < 30; c++) {
        h.set(0, c);
    }
    ClassicalCode big = ClassicalCode::from_parity_check(h, "big");
    EXPECT_EQ(big.k, 29u);
    EXPECT_THROW(min_distance_bruteforce(big), InfeasibleError);
}

TEST(CssCode, CombinedCodesForAllBuiltinsAndDistances) {
    for (OuterCodeId id : all_outer_codes()) {
        ClassicalCode outer = builtin_outer(id);
        for (size_t dz = 3; dz <= 15; dz += 2) {
            CssCode q = combine(outer, dz);
            EXPECT_TRUE(css_commutes(q));
            EXPECT_TRUE((q.h_x * q.h_z.transpose()).is_zero());
            EXPECT_EQ(q.n_phys, outer.n * dz);
            EXPECT_EQ(q.k, outer.k);
            EXPECT_EQ(q.d_x, *outer.d_claimed);
            EXPECT_EQ(q.d_z, dz);
            EXPECT_EQ(q.h_x.rows(), outer.h.rows());
            EXPECT_EQ(q.h_x.cols(), outer.n * dz);
            EXPECT_EQ(q.h_z.rows(), outer.n * (dz - 1));
            EXPECT_EQ(q.h_z.cols(), outer.n * dz);
            EXPECT_TRUE(logicals_valid(q));
        }
    }
}

TEST(CssCode, LogicalPairingMatchesOddOverlapRule) {
    CssCode q = combine(builtin_outer(OuterCodeId::code_15_6_5), 5);
    ASSERT_EQ(q.logical_x.size(), q.k);
    ASSERT_EQ(q.logical_z.size(), q.k);
    for (size_t i = 0; i < q.k; i++) {
        std::set<size_t> xs(q.logical_x[i].begin(), q.logical_x[i].end());
        for (size_t j = 0; j < q.k; j++) {
            size_t overlap = 0;
            for (size_t z : q.logical_z[j]) {
                overlap += xs.count(z);
            }
            EXPECT_EQ(overlap % 2, i == j ? 1u : 0u) << i << "," << j;
        }
        // Must commute with the Z-type stabilizers (rows of h_x).
        for (size_t r = 0; r < q.h_x.rows(); r++) {
            size_t overlap = 0;
            for (size_t c : q.h_x.row_support(r)) {
                overlap += xs.count(c);
            }
            EXPECT_EQ(overlap % 2, 0u);
        }
    }
}

TEST(CssCode, ExampleParameters) {
    CssCode q = combine(builtin_outer(OuterCodeId::code_15_9_3), 9);
    EXPECT_EQ(q.n_phys, 135u);
    EXPECT_EQ(q.k, 9u);
    EXPECT_EQ(q.d_x, 3u);
    EXPECT_EQ(q.d_z, 9u);

    CssCode flat = combine(builtin_outer(OuterCodeId::code_15_9_3), 1);
    EXPECT_EQ(flat.h_z.rows(), 0u);
    EXPECT_EQ(flat.n_phys, 15u);
}

TEST(CssCode, HandBuiltViolationDetected) {
    CssCode q = combine(repetition(3), 3);
    q.h_x = BinaryMatrix(1, q.n_phys);
    q.h_x.set(0, 0);
    EXPECT_FALSE(css_commutes(q));
}

}  // namespace
}  // namespace elevator
