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

#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "stabbreed/gf2.hpp"

namespace stabbreed {

enum class DiagonalKind { ZeroDiagonal, NonzeroDiagonal };

/// W = R D R^T with R invertible and D in canonical form:
///   ZeroDiagonal:    D = I_{r/2} ⊗ [[0,1],[1,0]] padded with zeros
///   NonzeroDiagonal: D = I_r padded with zeros
struct SymmetricFactorization {
    BitMatrix r;
    BitMatrix d;
    DiagonalKind kind = DiagonalKind::ZeroDiagonal;
    size_t rank = 0;
};

/// Canonical D for a given size, rank and kind.
BitMatrix canonical_form(size_t n, size_t rank, DiagonalKind kind);

SymmetricFactorization symmetric_factor(const BitMatrix &w);

/// Square M with M^T M = W; nullopt iff W is both full rank and zero-diagonal.
std::optional<BitMatrix> gram_root(const BitMatrix &w);

/// Orthogonal A whose leading columns are W (n x r). Requires W^T W = I_r and
/// the all-ones vector outside col(W); returns nullopt otherwise.
std::optional<BitMatrix> extend_to_orthogonal(const BitMatrix &w);

enum class RepairKind { AddedColumn, MixedColumns };

struct ColumnRepair {
    RepairKind kind;
    /// AddedColumn: index of the standard basis vector appended to Q.
    /// MixedColumns: column 1 was replaced by column 1 + column 2 (0-based 0, 1).
    size_t index = 0;

    std::string str() const;
};

struct BreedingMatrix {
    /// Orthogonal, (k + c') x (k + c').
    BitMatrix a;
    /// k x c' matrix actually embedded: the lower-left c' x k block of `a` is its transpose.
    BitMatrix q_used;
    std::vector<ColumnRepair> column_repairs;
};

/// Builds an orthogonal A whose lower-left block is Q'^T, with Q' = Q up to
/// the logged column repairs. Q must be k x c with full column rank, c <= k.
BreedingMatrix build_breeding_matrix(const BitMatrix &q);

/// k x c matrix with columns uniform over Z_2^k conditioned on full column rank.
BitMatrix random_full_rank(size_t k, size_t c, std::mt19937_64 &rng);

}  // namespace stabbreed
