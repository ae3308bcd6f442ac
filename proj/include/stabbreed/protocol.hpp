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
#include <random>
#include <span>
#include <vector>

#include "stabbreed/entropy.hpp"
#include "stabbreed/orthogonal.hpp"
#include "stabbreed/partition.hpp"
#include "stabbreed/stabilizer.hpp"

namespace stabbreed {

/// Number of ancilla measurements made under each partition.
struct AllocationEntry {
    MeasurableSubspace subspace;
    size_t count = 0;
};
using Allocation = std::vector<AllocationEntry>;

/// Derives an independent 64-bit seed for stream `index` of `seed`.
uint64_t split_seed(uint64_t seed, uint64_t index);

/// k independent draws from the noise model.
std::vector<uint64_t> sample_ensemble(const NoiseModel &nm, size_t k, std::mt19937_64 &rng);
std::vector<uint64_t> sample_ensemble(const NoiseModel &nm, size_t k, uint64_t seed);

/// n x k matrix whose column j is phase vector seq[j]: the per-party rows
/// are the b̃_i of the party-major layout.
BitMatrix phase_matrix(std::span<const uint64_t> seq, size_t n);

/// v^T u.
bool measurement_outcome(const BitVector &v, const BitVector &column);
/// v^T u for a v that must lie in V(M); throws otherwise.
bool measurement_outcome(const MeasurableSubspace &sub, const BitVector &v, const BitVector &column);
/// V^T u: everything one measurement under the partition reveals.
BitVector measurement_outcomes(const MeasurableSubspace &sub, const BitVector &column);

/// d(M, Δb̃) = rank(V^T ΔB̃) for a phase-difference matrix ΔB̃ (n x k).
size_t revealed_rank(const MeasurableSubspace &sub, const BitMatrix &delta_b);
/// Σ_M count(M) · d(M, Δb̃): the survival probability is 2^-exponent.
size_t survival_exponent(const Allocation &alloc, const BitMatrix &delta_b);

/// Fraction of trials in which V^T ΔB̃ q = 0 holds for every measurement,
/// with each q drawn uniformly from Z_2^k.
double survival_probability_mc(const StabilizerRep &state, const BitMatrix &delta_b, const Allocation &alloc,
                               size_t trials, uint64_t seed);

/// Integer measurement counts from fractions m(M): round(k Σ m) in total,
/// split by largest remainder.
std::vector<size_t> round_allocation(std::span<const double> m, size_t k);

struct ProtocolConfig {
    StabilizerRep state;
    NoiseModel noise;
    /// Noisy copies.
    size_t k = 0;
    double gamma = 0.0;
    std::vector<MeasurableSubspace> partitions;
    /// Measurements per partition; must sum to round((1 - gamma) k).
    std::vector<size_t> allocation;
    /// Typicality tolerance for sampled candidates.
    double eps = 0.1;
    uint64_t seed = 0;
    /// Random typical candidates b̃ to track besides the true one.
    size_t sampled_candidates = 64;
    /// Extra candidates given as differences Δb̃ (n x k) from the true ũ.
    std::vector<BitMatrix> explicit_deltas;
};

struct RunResult {
    /// Hidden phase vectors ũ, one per noisy copy.
    std::vector<uint64_t> true_u;
    /// Partition index used by each ancilla measurement.
    std::vector<size_t> measurement_partition;
    /// V^T u_{k+i} for each ancilla measurement.
    std::vector<BitVector> outcomes;
    /// Tracked candidates remaining (including ũ) after each measurement.
    std::vector<size_t> eliminated_history;
    size_t candidates_tracked = 0;
    size_t candidates_remaining = 1;
    /// Survival of each explicit Δb̃.
    std::vector<bool> delta_survived;
    std::vector<ColumnRepair> column_repairs;
};

RunResult run_protocol(const ProtocolConfig &cfg);

struct SurvivalRow {
    size_t exponent = 0;
    double predicted = 0.0;
    double empirical = 0.0;
    size_t runs = 0;
};

/// Runs the protocol `runs` times with per-run seeds split from cfg.seed and
/// reports, per explicit Δb̃, the empirical survival frequency next to 2^-Σd.
std::vector<SurvivalRow> survival_report(const ProtocolConfig &cfg, size_t runs);

/// `count` nonzero Δb̃ matrices, each the sum of two ensemble draws.
std::vector<BitMatrix> sample_deltas(const NoiseModel &nm, size_t k, size_t count, uint64_t seed);

}  // namespace stabbreed
