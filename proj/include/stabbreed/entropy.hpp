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

#include <cstdint>
#include <functional>
#include <shared_mutex>
#include <span>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "stabbreed/gf2.hpp"
#include "stabbreed/partition.hpp"

namespace stabbreed {

inline constexpr size_t kMaxNoiseQubits = 12;

/// Probability table over all 2^n phase vectors. Phase vector b is indexed by
/// the integer whose bit i is b_i.
class NoiseModel {
   public:
    NoiseModel(size_t n, std::vector<double> p);

    /// p(0) = fidelity, p(b != 0) = (1 - fidelity) / (2^n - 1).
    static NoiseModel werner(size_t n, double fidelity);

    size_t num_qubits() const { return n_; }
    size_t size() const { return p_.size(); }
    double p(uint64_t b) const { return p_[b]; }
    std::span<const double> table() const { return p_; }

   private:
    size_t n_;
    std::vector<double> p_;
};

/// Noise file: either a single "werner F" line, or 2^n lines
/// "bitstring probability" (bit i of the string is b_i).
NoiseModel parse_noise_model(std::string_view text, size_t n);

/// A subspace of Z_2^n (n <= 64), stored as its reduced row echelon basis so
/// equal subspaces compare equal.
class SubspaceKey {
   public:
    SubspaceKey() = default;
    explicit SubspaceKey(size_t n) : n_(n) {}
    /// Span of arbitrary (possibly dependent) vectors given as bit masks.
    static SubspaceKey span(size_t n, std::span<const uint64_t> vectors);
    /// Span of the columns of an n x d matrix.
    static SubspaceKey from_columns(const BitMatrix &basis);

    size_t ambient_dim() const { return n_; }
    size_t dim() const { return rows_.size(); }
    std::span<const uint64_t> rows() const { return rows_; }
    bool contains(uint64_t v) const;
    /// Columns form a basis.
    BitMatrix basis_matrix() const;

    friend SubspaceKey operator+(const SubspaceKey &a, const SubspaceKey &b);
    bool operator==(const SubspaceKey &) const = default;

   private:
    size_t n_ = 0;
    std::vector<uint64_t> rows_;
};

struct SubspaceKeyHash {
    size_t operator()(const SubspaceKey &k) const;
};

/// Shannon entropy in bits.
double entropy_bits(std::span<const double> p);
double entropy_H(const NoiseModel &nm);

/// Entropy of the class label G^T b, i.e. of the masses of the cosets of
/// G^perp.
double coset_entropy(const NoiseModel &nm, const SubspaceKey &g);

/// Memoized coset entropies for one noise model. Safe for concurrent use.
class CosetEntropyCache {
   public:
    explicit CosetEntropyCache(const NoiseModel &nm) : nm_(nm) {}
    double operator()(const SubspaceKey &g);
    const NoiseModel &noise() const { return nm_; }
    size_t size() const;

   private:
    const NoiseModel &nm_;
    mutable std::shared_mutex mu_;
    std::unordered_map<SubspaceKey, double, SubspaceKeyHash> memo_;
};

/// All d-dimensional subspaces of col(v.v_basis).
std::vector<SubspaceKey> enumerate_subspaces(const MeasurableSubspace &v, size_t d);

/// Number of d-dimensional subspaces of Z_2^k.
uint64_t gaussian_binomial2(size_t k, size_t d);

using FVector = std::vector<int>;

/// min over G_f(M) ⊆ V(M), dim G_f(M) = n(M) - f(M), of C(Σ_M G_f(M)).
double h_f(const NoiseModel &nm, std::span<const MeasurableSubspace> subspaces, const FVector &f,
           CosetEntropyCache *cache = nullptr);

/// H - C(G): per-copy exponent of the number of typical sequences sharing
/// the coset labels of a given typical sequence.
double typical_count_exponent(const NoiseModel &nm, const SubspaceKey &g);

/// |f_a - p(a)| < eps for every phase vector a.
bool is_strongly_typical(std::span<const uint64_t> seq, const NoiseModel &nm, double eps);

}  // namespace stabbreed
