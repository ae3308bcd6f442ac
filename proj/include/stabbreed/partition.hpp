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
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "stabbreed/gf2.hpp"
#include "stabbreed/stabilizer.hpp"

namespace stabbreed {

enum class MeasBasis : uint8_t { Z = 0, X = 1, Y = 2 };

/// Assignment of a local sigma_z / sigma_x / sigma_y measurement to every
/// qubit. Indices are 0-based in code and 1-based in text.
class MeasurementPartition {
   public:
    MeasurementPartition() = default;
    explicit MeasurementPartition(std::vector<MeasBasis> bases) : bases_(std::move(bases)) {}
    /// Builds from explicit index sets; throws unless they are disjoint and
    /// cover {0, ..., n-1}.
    static MeasurementPartition from_sets(size_t n, const std::set<size_t> &mz, const std::set<size_t> &mx,
                                          const std::set<size_t> &my);
    /// One character per qubit from {z, x, y}, e.g. "xxzzz".
    static MeasurementPartition parse(std::string_view letters);

    size_t num_qubits() const { return bases_.size(); }
    MeasBasis basis(size_t qubit) const { return bases_[qubit]; }
    std::set<size_t> indices(MeasBasis which) const;
    std::set<size_t> mz() const { return indices(MeasBasis::Z); }
    std::set<size_t> mx() const { return indices(MeasBasis::X); }
    std::set<size_t> my() const { return indices(MeasBasis::Y); }

    std::string str() const;
    bool operator==(const MeasurementPartition &) const = default;

   private:
    std::vector<MeasBasis> bases_;
};

/// V(M): exponents v whose phase bit v^T b is determined by the outcomes of
/// the local measurements in M. `v_basis` is n x dim.
struct MeasurableSubspace {
    MeasurementPartition partition;
    BitMatrix v_basis;

    size_t dim() const { return v_basis.cols(); }
};

/// supp(v), 0-based.
std::set<size_t> support(const BitVector &v);

/// Per qubit i: i in M_z requires (S_x v)_i = 0, i in M_x requires
/// (S_z v)_i = 0, i in M_y requires (S_z v)_i = (S_x v)_i. V(M) is the
/// nullspace of the stacked constraint rows.
MeasurableSubspace measurable_subspace(const StabilizerRep &s, const MeasurementPartition &m);

inline constexpr size_t kDefaultPartitionLimit = 10;

/// All 3^n partitions, as a ternary counter with qubit 0 least significant
/// and digit order z, x, y.
std::vector<MeasurementPartition> enumerate_partitions(size_t n, size_t limit = kDefaultPartitionLimit);

/// All partitions attaining the maximum dim V(M), in enumeration order.
std::vector<MeasurableSubspace> best_partitions(const StabilizerRep &s, size_t limit = kDefaultPartitionLimit);

/// Partition file: one partition per line in the letter format.
std::vector<MeasurementPartition> parse_partitions(std::string_view text, size_t n);

/// The five partitions used for the 5-qubit ring example.
std::vector<MeasurementPartition> ring5_partitions();

}  // namespace stabbreed
