// Copyright 2026 The stabbreed Authors
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

#include "stabbreed/orthogonal.hpp"
#include "test_util.hpp"

namespace stabbreed {
namespace {

using testing::random_matrix;
using testing::random_symmetric;
using testing::symmetric_from_code;

void expect_valid_factor(const BitMatrix &w) {
    SymmetricFactorization f = symmetric_factor(w);
    ASSERT_TRUE(inverse(f.r).has_value());
    EXPECT_EQ(matmul(matmul(f.r, f.d), f.r.transpose()), w);
    EXPECT_EQ(f.rank, rank(w));
    EXPECT_EQ(f.kind == DiagonalKind::ZeroDiagonal, w.has_zero_diagonal());
    EXPECT_EQ(f.d, canonical_form(w.rows(), f.rank, f.kind));
}

TEST(SymmetricFactor, SmallExamples) {
    auto h = BitMatrix::from_rows({"01", "10"});
    auto fh = symmetric_factor(h);
    EXPECT_EQ(fh.r, BitMatrix::identity(2));
    EXPECT_EQ(fh.d, h);
    auto fz = symmetric_factor(BitMatrix(3, 3));
    EXPECT_EQ(fz.r, BitMatrix::identity(3));
    EXPECT_TRUE(fz.d.is_zero());
    auto w = BitMatrix::from_rows({"11", "10"});
    auto fw = symmetric_factor(w);
    EXPECT_EQ(fw.d, BitMatrix::identity(2));
    EXPECT_EQ(matmul(fw.r, fw.r.transpose()), w);
    EXPECT_THROW(symmetric_factor(BitMatrix::from_rows({"01", "00"})), std::invalid_argument);
}

TEST(SymmetricFactor, ExhaustiveUpToFour) {
    for (size_t n = 1; n <= 4; ++n) {
        for (uint64_t code = 0; code < (uint64_t{1} << (n * (n + 1) / 2)); ++code) {
            expect_valid_factor(symmetric_from_code(n, code));
        }
    }
}

TEST(SymmetricFactor, RandomUpToSixtyFour) {
    std::mt19937_64 rng(51);
    for (size_t n : {5u, 16u, 33u, 64u}) {
        for (int t = 0; t < 40; ++t) {
            BitMatrix w = random_symmetric(n, rng);
            if (t % 4 == 0) {
                for (size_t i = 0; i < n; ++i) {
                    w.set(i, i, false);
                }
            }
            if (t % 5 == 0) {
                BitMatrix x = random_matrix(n, n / 3, rng);
                w = matmul(x, x.transpose());  // low rank
            }
            expect_valid_factor(w);
        }
    }
}

TEST(GramRoot, SmallExamples) {
    auto one = gram_root(BitMatrix::from_rows({"1"}));
    ASSERT_TRUE(one.has_value());
    EXPECT_EQ(*one, BitMatrix::from_rows({"1"}));
    EXPECT_FALSE(gram_root(BitMatrix::from_rows({"01", "10"})).has_value());
    auto h3 = BitMatrix::from_rows({"010", "100", "000"});
    auto m = gram_root(h3);
    ASSERT_TRUE(m.has_value());
    EXPECT_EQ(matmul(m->transpose(), *m), h3);
}

TEST(GramRoot, ExhaustiveUpToFour) {
    for (size_t n = 1; n <= 4; ++n) {
        for (uint64_t code = 0; code < (uint64_t{1} << (n * (n + 1) / 2)); ++code) {
            BitMatrix w = symmetric_from_code(n, code);
            bool impossible = rank(w) == n && w.has_zero_diagonal();
            auto m = gram_root(w);
            EXPECT_EQ(m.has_value(), !impossible) << w;
            if (m) {
                EXPECT_EQ(matmul(m->transpose(), *m), w) << w;
            }
        }
    }
}

TEST(GramRoot, ImpossibleCaseHasNoRootAtAll) {
    // Direct search: no 2 x 2 or 4 x 4 M squares to a full-rank zero-diagonal W.
    for (size_t n : {2u, 4u}) {
        BitMatrix w = kron(BitMatrix::identity(n / 2), BitMatrix::from_rows({"01", "10"}));
        for (uint64_t code = 0; code < (uint64_t{1} << (n * n)); ++code) {
            BitMatrix m(n, n);
            for (size_t i = 0; i < n * n; ++i) {
                m.set(i / n, i % n, (code >> i) & 1u);
            }
            ASSERT_FALSE(matmul(m.transpose(), m) == w);
        }
    }
}

TEST(GramRoot, RandomLarge) {
    std::mt19937_64 rng(53);
    for (size_t n : {8u, 31u, 64u}) {
        for (int t = 0; t < 30; ++t) {
            BitMatrix w = random_symmetric(n, rng);
            if (t % 3 == 0) {
                for (size_t i = 0; i < n; ++i) {
                    w.set(i, i, false);
                }
            }
            auto m = gram_root(w);
            EXPECT_EQ(m.has_value(), !(rank(w) == n && w.has_zero_diagonal()));
            if (m) {
                EXPECT_EQ(matmul(m->transpose(), *m), w);
            }
        }
    }
}

TEST(Extend, Examples) {
    auto e1 = extend_to_orthogonal(BitMatrix::from_rows({"1", "0", "0"}));
    ASSERT_TRUE(e1.has_value());
    EXPECT_TRUE(is_orthogonal(*e1));
    EXPECT_EQ(e1->col(0).str(), "100");
    EXPECT_FALSE(extend_to_orthogonal(BitMatrix::from_rows({"1", "1", "1"})).has_value());
    EXPECT_FALSE(extend_to_orthogonal(BitMatrix::from_rows({"1", "1", "0"})).has_value());
}

TEST(Extend, ExhaustiveUpToFour) {
    for (size_t n = 1; n <= 4; ++n) {
        for (size_t r = 1; r <= n; ++r) {
            for (uint64_t code = 0; code < (uint64_t{1} << (n * r)); ++code) {
                BitMatrix w(n, r);
                for (size_t i = 0; i < n * r; ++i) {
                    w.set(i / r, i % r, (code >> i) & 1u);
                }
                bool ortho_cols = matmul(w.transpose(), w) == BitMatrix::identity(r);
                bool ones_in_col = solve(w, BitVector::ones(n)).has_value();
                auto a = extend_to_orthogonal(w);
                ASSERT_EQ(a.has_value(), ortho_cols && !ones_in_col) << w;
                if (a) {
                    EXPECT_TRUE(is_orthogonal(*a));
                    EXPECT_EQ(a->block(0, 0, n, r), w);
                }
            }
        }
    }
}

TEST(Extend, RandomUpTo32By16) {
    std::mt19937_64 rng(57);
    int built = 0;
    for (int t = 0; t < 200; ++t) {
        // W = [Q; M] with M^T M = I + Q^T Q, so W^T W = I.
        size_t n = 8 + rng() % 25;
        size_t r = 1 + rng() % std::min<size_t>(16, n - 1);
        BitMatrix q = random_full_rank(n, r, rng);
        auto m = gram_root(matmul(q.transpose(), q) + BitMatrix::identity(r));
        if (!m) {
            continue;
        }
        BitMatrix w = vstack(q, *m);
        auto a = extend_to_orthogonal(w);
        if (a) {
            ++built;
            EXPECT_TRUE(is_orthogonal(*a));
            EXPECT_EQ(a->block(0, 0, w.rows(), r), w);
        }
    }
    EXPECT_GT(built, 50);
}

TEST(BreedingMatrix, IdentityColumns) {
    BitMatrix q = BitMatrix::identity(6).block(0, 0, 6, 3);
    BreedingMatrix bm = build_breeding_matrix(q);
    EXPECT_TRUE(bm.column_repairs.empty());
    EXPECT_EQ(bm.q_used, q);
    EXPECT_TRUE(is_orthogonal(bm.a));
    EXPECT_EQ(bm.a.block(6, 0, 3, 6), q.transpose());
    // Permutation-like: every row and column has weight one.
    for (size_t i = 0; i < bm.a.rows(); ++i) {
        EXPECT_EQ(bm.a.row(i).weight(), 1u);
    }
}

TEST(BreedingMatrix, AllOnesColumnNeedsRepair) {
    BitMatrix q(4, 1);
    q.set_col(0, BitVector::ones(4));
    BreedingMatrix bm = build_breeding_matrix(q);
    EXPECT_FALSE(bm.column_repairs.empty());
    EXPECT_LE(bm.column_repairs.size(), 2u);
    EXPECT_TRUE(is_orthogonal(bm.a));
    const size_t c = bm.q_used.cols();
    EXPECT_EQ(bm.a.block(4, 0, c, 4), bm.q_used.transpose());
    EXPECT_EQ(bm.q_used.col(0), q.col(0));
}

TEST(BreedingMatrix, RandomCorpus) {
    std::mt19937_64 rng(59);
    size_t repaired = 0;
    for (auto [k, c] : {std::pair{6, 3}, {8, 4}, {10, 1}, {12, 12}, {16, 8}}) {
        for (int t = 0; t < 100; ++t) {
            BitMatrix q = random_full_rank(k, c, rng);
            BreedingMatrix bm = build_breeding_matrix(q);
            const size_t cu = bm.q_used.cols();
            ASSERT_TRUE(is_orthogonal(bm.a));
            ASSERT_EQ(bm.a.rows(), k + cu);
            ASSERT_EQ(bm.a.block(k, 0, cu, k), bm.q_used.transpose());
            ASSERT_LE(bm.column_repairs.size(), 2u);
            ASSERT_EQ(rank(bm.q_used), cu);
            repaired += !bm.column_repairs.empty();
        }
    }
    EXPECT_GT(repaired, 0u);
}

TEST(BreedingMatrix, Errors) {
    BitMatrix q(4, 2);
    q.set(0, 0, true);
    q.set(0, 1, true);
    try {
        build_breeding_matrix(q);
        FAIL();
    } catch (const std::invalid_argument &e) {
        EXPECT_NE(std::string(e.what()).find("rank 1"), std::string::npos);
    }
    EXPECT_THROW(build_breeding_matrix(BitMatrix(2, 3)), std::invalid_argument);
}

TEST(RandomFullRank, RankAndBitBalance) {
    std::mt19937_64 rng(61);
    const size_t k = 16;
    const size_t c = 8;
    const int draws = 2000;
    std::vector<int> ones(k * c, 0);
    for (int t = 0; t < draws; ++t) {
        BitMatrix q = random_full_rank(k, c, rng);
        ASSERT_EQ(rank(q), c);
        for (size_t i = 0; i < k * c; ++i) {
            ones[i] += q.get(i / c, i % c);
        }
    }
    // Chi-square over all k c cells against a fair coin; 128 dof, 99.9% point ~ 181.
    double chi2 = 0.0;
    for (int x : ones) {
        double e = draws / 2.0;
        chi2 += (x - e) * (x - e) / e + (draws - x - e) * (draws - x - e) / e;
    }
    EXPECT_LT(chi2, 181.0);
}

}  // namespace
}  // namespace stabbreed
