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
#include <string_view>

#include "stabbreed/gf2.hpp"

namespace stabbreed {

/// Hermitian Pauli operation in the binary picture: `a` is (z-part | x-part),
/// each of length n. The sign is carried along but never propagated through
/// Clifford conjugation.
struct PauliRep {
    BitVector a;
    bool sign = false;

    size_t num_qubits() const { return a.size() / 2; }
    BitVector z_part() const { return a.slice(0, num_qubits()); }
    BitVector x_part() const { return a.slice(num_qubits(), num_qubits()); }
};

/// True iff a^T P b == 0.
bool commutes(const PauliRep &p, const PauliRep &q);

/// Stabilizer state (S, b): S is 2n x n with S_z on top of S_x, b holds the
/// phase bits of the n generators.
class StabilizerRep {
   public:
    StabilizerRep() = default;
    /// Validates rank(S) == n and S^T P S == 0.
    StabilizerRep(BitMatrix s, BitVector b);
    explicit StabilizerRep(BitMatrix s);

    size_t num_qubits() const { return s_.cols(); }
    const BitMatrix &s() const { return s_; }
    const BitVector &b() const { return b_; }
    BitMatrix s_z() const { return s_.block(0, 0, num_qubits(), num_qubits()); }
    BitMatrix s_x() const { return s_.block(num_qubits(), 0, num_qubits(), num_qubits()); }

    bool operator==(const StabilizerRep &) const = default;

   private:
    BitMatrix s_;
    BitVector b_;
};

/// Clifford operation (binary part only). Symplectic by construction.
class CliffordRep {
   public:
    explicit CliffordRep(BitMatrix c);
    static CliffordRep identity(size_t n) { return CliffordRep(BitMatrix::identity(2 * n)); }

    size_t num_qubits() const { return c_.rows() / 2; }
    const BitMatrix &c() const { return c_; }
    bool operator==(const CliffordRep &) const = default;

   private:
    BitMatrix c_;
};

/// Tensor product of two stabilizer states with block-diagonal z and x parts.
StabilizerRep tensor_stab(const StabilizerRep &r1, const StabilizerRep &r2);

/// Generator change S' = S R, b' = R^T b (zero correction term).
StabilizerRep change_generators(const StabilizerRep &r, const BitMatrix &rmat);

/// S' = C S, b' = b (zero correction term).
StabilizerRep apply_clifford(const CliffordRep &q, const StabilizerRep &r);

/// Pauli g with S^T P g == f; applying it before a Clifford cancels a phase
/// correction f.
std::optional<PauliRep> phase_correction_pauli(const StabilizerRep &r, const BitVector &f);

/// Tensor product of Cliffords, interleaving the four n x n blocks of each.
CliffordRep tensor_clifford(const CliffordRep &q1, const CliffordRep &q2);

/// CNOT-only Clifford [[A, 0], [0, A^{-T}]].
CliffordRep cnot_clifford(const BitMatrix &a);

/// S ⊗ I_kbar: the k̄ copies laid out per party.
BitMatrix copies_rep(const BitMatrix &s, size_t kbar);

/// b̄ -> (I_n ⊗ A) b̄ for the per-party layout; A must be orthogonal.
BitVector breeding_transform(const BitVector &bbar, const BitMatrix &a, size_t n);

/// Reorders phase bits from per-copy order (copy-major) to per-party order
/// (party-major), and back.
BitVector per_copy_to_per_party(const BitVector &bits, size_t n, size_t copies);
BitVector per_party_to_per_copy(const BitVector &bits, size_t n, size_t copies);

/// Graph state S = [theta; I], b = 0.
StabilizerRep graph_state_rep(const BitMatrix &theta);

/// Adjacency of the 5-qubit ring used as the worked example.
BitMatrix ring5_adjacency();

/// Stabilizer file: a 2n x n matrix in the text matrix format, optionally
/// followed by one line of n phase bits.
StabilizerRep parse_stabilizer(std::string_view text);
std::string format_stabilizer(const StabilizerRep &r);

}  // namespace stabbreed
