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

#include "stabbreed/orthogonal.hpp"

#include <array>
#include <stdexcept>

namespace stabbreed {

namespace {

using Block3 = std::array<std::array<bool, 3>, 3>;

// diag(1, [[0,1],[1,0]]) = V V^T, V symmetric.
constexpr Block3 kOnePlusPair = {{{1, 1, 1}, {1, 1, 0}, {1, 0, 1}}};
// diag([[0,1],[1,0]], 0) = V^T V.
constexpr Block3 kPairPlusZero = {{{1, 0, 0}, {1, 1, 0}, {0, 1, 0}}};

// Congruence W -> E W E^T with E = I + e_dst e_src^T.
void congruent_add(BitMatrix &w, size_t dst, size_t src) {
    w.xor_row(dst, src);
    for (size_t r = 0; r < w.rows(); ++r) {
        if (w.get(r, src)) {
            w.flip(r, dst);
        }
    }
}

void congruent_swap(BitMatrix &w, size_t a, size_t b) {
    w.swap_rows(a, b);
    w.swap_cols(a, b);
}

// Rows idx[c] of m replaced by sum_k block[k][c] * old row idx[k]:
// left-multiplication by the transpose of `block` embedded at idx.
void mix_rows(BitMatrix &m, const std::array<size_t, 3> &idx, const Block3 &block) {
    std::array<BitVector, 3> old{m.row(idx[0]), m.row(idx[1]), m.row(idx[2])};
    for (size_t c = 0; c < 3; ++c) {
        BitVector acc(m.cols());
        for (size_t k = 0; k < 3; ++k) {
            if (block[k][c]) {
                acc ^= old[k];
            }
        }
        m.set_row(idx[c], acc);
    }
}

// Identity with `block` embedded at idx.
BitMatrix embedded(size_t n, const std::array<size_t, 3> &idx, const Block3 &block) {
    BitMatrix t = BitMatrix::identity(n);
    for (size_t a = 0; a < 3; ++a) {
        for (size_t b = 0; b < 3; ++b) {
            t.set(idx[a], idx[b], block[a][b]);
        }
    }
    return t;
}

}  // namespace

BitMatrix canonical_form(size_t n, size_t rank, DiagonalKind kind) {
    BitMatrix d(n, n);
    if (kind == DiagonalKind::NonzeroDiagonal) {
        for (size_t i = 0; i < rank; ++i) {
            d.set(i, i, true);
        }
    } else {
        for (size_t i = 0; i + 1 < rank; i += 2) {
            d.set(i, i + 1, true);
            d.set(i + 1, i, true);
        }
    }
    return d;
}

SymmetricFactorization symmetric_factor(const BitMatrix &w) {
    if (!w.is_symmetric()) {
        throw std::invalid_argument("symmetric_factor: W must be symmetric");
    }
    const size_t n = w.rows();
    // Invariant: W = R cur R^T, with R^T kept row-major as rt.
    BitMatrix cur = w;
    BitMatrix rt = BitMatrix::identity(n);
    auto swap = [&](size_t a, size_t b) {
        if (a != b) {
            congruent_swap(cur, a, b);
            rt.swap_rows(a, b);
        }
    };
    auto add = [&](size_t dst, size_t src) {
        congruent_add(cur, dst, src);
        rt.xor_row(src, dst);
    };

    size_t p = 0;
    size_t ones = 0;
    // Peel 1 x 1 blocks while the remaining block has a nonzero diagonal.
    while (p < n) {
        size_t i = p;
        while (i < n && !cur.get(i, i)) {
            ++i;
        }
        if (i == n) {
            break;
        }
        swap(i, p);
        for (size_t j = p + 1; j < n; ++j) {
            if (cur.get(j, p)) {
                add(j, p);
            }
        }
        ++p;
        ++ones;
    }
    // The rest has a zero diagonal: peel [[0,1],[1,0]] blocks.
    size_t pairs = 0;
    while (p + 1 < n) {
        size_t pi = n;
        size_t pj = n;
        for (size_t i = p; i < n && pi == n; ++i) {
            for (size_t j = i + 1; j < n; ++j) {
                if (cur.get(i, j)) {
                    pi = i;
                    pj = j;
                    break;
                }
            }
        }
        if (pi == n) {
            break;
        }
        swap(pi, p);
        swap(pj, p + 1);
        for (size_t r = p + 2; r < n; ++r) {
            if (cur.get(r, p)) {
                add(r, p + 1);
            }
            if (cur.get(r, p + 1)) {
                add(r, p);
            }
        }
        p += 2;
        ++pairs;
    }

    SymmetricFactorization out;
    out.kind = w.has_zero_diagonal() ? DiagonalKind::ZeroDiagonal : DiagonalKind::NonzeroDiagonal;
    out.rank = ones + 2 * pairs;
    if (ones > 0) {
        // diag(1, H) = V V^T turns each pair after a 1 into two more 1s.
        for (size_t t = 0; t < pairs; ++t) {
            size_t q = ones + 2 * t;
            mix_rows(rt, {q - 1, q, q + 1}, kOnePlusPair);
        }
    }
    out.r = rt.transpose();
    out.d = canonical_form(n, out.rank, out.kind);
    return out;
}

std::optional<BitMatrix> gram_root(const BitMatrix &w) {
    SymmetricFactorization f = symmetric_factor(w);
    const size_t n = w.rows();
    BitMatrix rt = f.r.transpose();
    if (f.kind == DiagonalKind::NonzeroDiagonal || f.rank == 0) {
        // M = D R^T with D = diag(I_r, 0).
        for (size_t i = f.rank; i < n; ++i) {
            rt.set_row(i, BitVector(n));
        }
        return rt;
    }
    if (f.rank == n) {
        return std::nullopt;
    }
    // D = diag(H, ..., H, 0, ...) = U^T U: the first pair borrows the first
    // zero slot, every later pair borrows that (now unit) slot again.
    const size_t pairs = f.rank / 2;
    const size_t slot = f.rank;
    BitMatrix u = BitMatrix::identity(n);
    u = matmul(embedded(n, {0, 1, slot}, kPairPlusZero), u);
    for (size_t t = 1; t < pairs; ++t) {
        u = matmul(embedded(n, {slot, 2 * t, 2 * t + 1}, kOnePlusPair), u);
    }
    for (size_t i = 0; i < n; ++i) {
        if (i >= f.rank && i != slot) {
            u.set_row(i, BitVector(n));
        }
    }
    return matmul(u, rt);
}

std::optional<BitMatrix> extend_to_orthogonal(const BitMatrix &w) {
    const size_t n = w.rows();
    const size_t r = w.cols();
    BitMatrix wt = w.transpose();
    if (!(matmul(wt, w) == BitMatrix::identity(r))) {
        return std::nullopt;
    }
    if (solve(w, BitVector::ones(n))) {
        return std::nullopt;
    }
    BitMatrix y = nullspace_basis(wt);
    SymmetricFactorization f = symmetric_factor(matmul(y.transpose(), y));
    if (f.rank != n - r || (f.rank > 0 && f.kind != DiagonalKind::NonzeroDiagonal)) {
        throw std::logic_error("extend_to_orthogonal: Y^T Y is not congruent to the identity");
    }
    auto rinv = inverse(f.r);
    if (!rinv) {
        throw std::logic_error("extend_to_orthogonal: factor R is singular");
    }
    BitMatrix a = hstack(w, matmul(y, rinv->transpose()));
    if (!is_orthogonal(a)) {
        throw std::logic_error("extend_to_orthogonal: completion is not orthogonal");
    }
    return a;
}

std::string ColumnRepair::str() const {
    if (kind == RepairKind::AddedColumn) {
        return "added_column e" + std::to_string(index + 1);
    }
    return "mixed_columns 2 into 1";
}

namespace {

BitMatrix append_column(const BitMatrix &q, const BitVector &v) {
    BitMatrix out(q.rows(), q.cols() + 1);
    out.set_block(0, 0, q);
    out.set_col(q.cols(), v);
    return out;
}

size_t add_repair_column(BitMatrix &q) {
    for (size_t i = 0; i < q.rows(); ++i) {
        BitMatrix candidate = append_column(q, BitVector::unit(q.rows(), i));
        if (rank(candidate) == candidate.cols()) {
            q = std::move(candidate);
            return i;
        }
    }
    throw std::domain_error("build_breeding_matrix: no standard basis column keeps Q full rank");
}

}  // namespace

BreedingMatrix build_breeding_matrix(const BitMatrix &q) {
    const size_t k = q.rows();
    if (q.cols() > k) {
        throw std::invalid_argument("build_breeding_matrix: Q has more columns than rows");
    }
    if (size_t rq = rank(q); rq != q.cols()) {
        throw std::invalid_argument("build_breeding_matrix: Q is rank-deficient (rank " + std::to_string(rq) +
                                    " < " + std::to_string(q.cols()) + " columns)");
    }
    BreedingMatrix out;
    out.q_used = q;
    // Each iteration either succeeds or logs one repair.
    for (int attempt = 0; attempt < 6; ++attempt) {
        BitMatrix &qp = out.q_used;
        const size_t c = qp.cols();
        BitMatrix gram = matmul(qp.transpose(), qp) + BitMatrix::identity(c);
        auto m = gram_root(gram);
        if (!m) {
            size_t i = add_repair_column(qp);
            out.column_repairs.push_back({RepairKind::AddedColumn, i});
            continue;
        }
        BitMatrix w = vstack(qp, *m);
        auto full = extend_to_orthogonal(w);
        if (!full) {
            if (c >= 2) {
                for (size_t r = 0; r < k; ++r) {
                    if (qp.get(r, 1)) {
                        qp.flip(r, 0);
                    }
                }
                out.column_repairs.push_back({RepairKind::MixedColumns, 0});
            } else {
                size_t i = add_repair_column(qp);
                out.column_repairs.push_back({RepairKind::AddedColumn, i});
            }
            continue;
        }
        // A^T = [Z W] puts Q'^T in the lower-left block of A.
        const size_t kbar = k + c;
        BitMatrix at = hstack(full->block(0, c, kbar, kbar - c), w);
        out.a = at.transpose();
        return out;
    }
    throw std::logic_error("build_breeding_matrix: repairs did not converge");
}

BitMatrix random_full_rank(size_t k, size_t c, std::mt19937_64 &rng) {
    if (c > k) {
        throw std::invalid_argument("random_full_rank: more columns than rows");
    }
    BitMatrix q(k, c);
    std::bernoulli_distribution coin(0.5);
    for (size_t col = 0; col < c; ++col) {
        while (true) {
            BitVector v(k);
            for (size_t r = 0; r < k; ++r) {
                v.set(r, coin(rng));
            }
            q.set_col(col, v);
            if (rank(q.block(0, 0, k, col + 1)) == col + 1) {
                break;
            }
        }
    }
    return q;
}

}  // namespace stabbreed
