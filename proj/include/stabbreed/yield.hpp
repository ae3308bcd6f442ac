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
#include <span>
#include <string>
#include <vector>

#include "stabbreed/entropy.hpp"
#include "stabbreed/partition.hpp"

namespace stabbreed {

/// All f with 0 <= f(M) <= n(M), excluding f ≡ 0. Mixed-radix order with the
/// first partition least significant. Throws when prod (n(M) + 1) exceeds
/// kMaxFVectors, since every f costs one H_f minimization.
inline constexpr size_t kMaxFVectors = 200000;

std::vector<FVector> enumerate_f(std::span<const MeasurableSubspace> partitions);

struct YieldConstraint {
    FVector f;
    double h_f = 0.0;
    /// max(0, H - H_f)
    double rhs = 0.0;
};

struct YieldProblem {
    std::vector<MeasurableSubspace> partitions;
    std::vector<YieldConstraint> constraints;
    double entropy = 0.0;
};

YieldProblem build_problem(const NoiseModel &nm, std::vector<MeasurableSubspace> partitions);

struct YieldSolution {
    /// Measurement fraction per partition.
    std::vector<double> m;
    double sum_m = 0.0;
    /// 1 - sum_m, clamped to [0, 1].
    double gamma = 1.0;
    /// True when sum_m > 1, i.e. breeding is infeasible at this noise level.
    bool clamped = false;
    /// Indices into YieldProblem::constraints that hold with equality.
    std::vector<size_t> binding;
};

/// min Σ m(M) subject to Σ m(M) f(M) >= rhs_f, m >= 0.
YieldSolution solve_lp(const YieldProblem &prob);

/// Generic covering LP: min 1^T x s.t. A x >= b, x >= 0 with b >= 0.
struct CoveringLp {
    std::vector<std::vector<double>> rows;
    std::vector<double> rhs;
    size_t num_vars = 0;
};

/// Dense simplex with Bland's rule, run on the dual (max b^T y, A^T y <= 1,
/// y >= 0) so the all-slack basis is feasible from the start.
std::vector<double> solve_covering_simplex(const CoveringLp &lp);
/// Exact enumeration of the vertices of the feasible polyhedron. Returns
/// nullopt when the combination count exceeds `max_combinations`.
std::optional<std::vector<double>> solve_covering_vertices(const CoveringLp &lp, size_t max_combinations);
/// Removes zero-rhs rows and rows implied by another row (componentwise
/// smaller coefficients with a rhs at least as large).
CoveringLp prune_covering(const CoveringLp &lp);

struct YieldCurvePoint {
    double fidelity = 0.0;
    double entropy = 0.0;
    YieldSolution solution;
    std::vector<FVector> binding_f;
};

/// One solved LP per fidelity of the Werner-style family on n qubits.
std::vector<YieldCurvePoint> yield_curve(size_t n, std::span<const MeasurableSubspace> partitions,
                                         std::span<const double> fidelities, size_t threads = 0);

/// "2 2 2 2 2"
std::string format_f(const FVector &f);

}  // namespace stabbreed
