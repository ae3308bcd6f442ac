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

#include "stabbreed/stabilizer.hpp"
#include "test_util.hpp"

namespace stabbreed {
namespace {

using testing::random_matrix;

PauliRep pauli(std::string_view bits) { return PauliRep{BitVector::from_string(bits), false}; }

BitMatrix random_invertible(size_t n, std::mt19937_64 &rng) {
    while (true) {
        BitMatrix m = random_matrix(n, n, rng);
        if (rank(m) == n) {
            return m;
        }
    }
}

// Row space of S^T, i.e. the stabilizer group generated by the columns.
BitMatrix group_echelon(const BitMatrix &s) { return row_reduce(s.transpose()).reduced; }

TEST(Commutes, PauliAlgebra) {
    EXPECT_FALSE(commutes(pauli("10"), pauli("01")));
    EXPECT_TRUE(commutes(pauli("11"), pauli("11")));
    EXPECT_TRUE(commutes(pauli("1001"), pauli("0110")));
    EXPECT_FALSE(commutes(pauli("1000"), pauli("0010")));
    EXPECT_THROW(commutes(pauli("10"), pauli("1000")), std::invalid_argument);
}

TEST(StabilizerRep, Validation) {
    EXPECT_NO_THROW(StabilizerRep(BitMatrix::from_rows({"1", "0"})));
    // Rank deficient.
    EXPECT_THROW(StabilizerRep(BitMatrix::from_rows({"11", "00", "00", "00"})), std::invalid_argument);
    // Anticommuting generators Z and X.
    EXPECT_THROW(StabilizerRep(BitMatrix::from_rows({"10", "01", "01", "00"})), std::invalid_argument);
    EXPECT_THROW(StabilizerRep(BitMatrix::from_rows({"1", "0"}), BitVector(2)), std::invalid_argument);
}

TEST(TensorStab, BlockLayout) {
    StabilizerRep zero(BitMatrix::from_rows({"1", "0"}));
    StabilizerRep t = tensor_stab(zero, zero);
    EXPECT_EQ(t.s(), BitMatrix::from_rows({"10", "01", "00", "00"}));
    EXPECT_EQ(t.b(), BitVector(2));
    StabilizerRep ring = graph_state_rep(ring5_adjacency());
    StabilizerRep big = tensor_stab(ring, StabilizerRep(BitMatrix::from_rows({"0", "1"}), BitVector::from_string("1")));
    EXPECT_EQ(big.num_qubits(), 6u);
    EXPECT_EQ(big.s_z().block(0, 0, 5, 5), ring5_adjacency());
    EXPECT_EQ(big.s_x().get(5, 5), true);
    EXPECT_EQ(big.b().str(), "000001");
}

TEST(ChangeGenerators, PreservesGroup) {
    std::mt19937_64 rng(17);
    StabilizerRep ring(graph_state_rep(ring5_adjacency()).s(), BitVector::from_string("10110"));
    EXPECT_EQ(change_generators(ring, BitMatrix::identity(5)), ring);
    for (int t = 0; t < 20; ++t) {
        BitMatrix r = random_invertible(5, rng);
        StabilizerRep out = change_generators(ring, r);
        EXPECT_EQ(group_echelon(out.s()), group_echelon(ring.s()));
        EXPECT_EQ(out.b(), matvec(r.transpose(), ring.b()));
    }
    BitMatrix swap01 = BitMatrix::from_rows({"01000", "10000", "00100", "00010", "00001"});
    StabilizerRep sw = change_generators(ring, swap01);
    EXPECT_EQ(sw.s().col(0), ring.s().col(1));
    EXPECT_EQ(sw.b().str(), "01110");
    EXPECT_THROW(change_generators(ring, BitMatrix(5, 5)), std::invalid_argument);
}

TEST(ApplyClifford, CnotOnPair) {
    // CNOT from qubit 0 to 1 as [[A,0],[0,A^-T]] with A acting on z-bits.
    BitMatrix a = BitMatrix::from_rows({"10", "11"});
    CliffordRep cnot = cnot_clifford(a);
    EXPECT_TRUE(is_symplectic(cnot.c()));
    StabilizerRep zz(BitMatrix::from_rows({"10", "01", "00", "00"}));
    StabilizerRep out = apply_clifford(cnot, zz);
    // Hand block product: z-block A·I = A, x-block stays zero.
    EXPECT_EQ(out.s(), BitMatrix::from_rows({"10", "11", "00", "00"}));
    EXPECT_EQ(apply_clifford(CliffordRep::identity(2), zz), zz);
    EXPECT_THROW(apply_clifford(CliffordRep::identity(3), zz), std::invalid_argument);
}

TEST(CnotClifford, Blocks) {
    EXPECT_EQ(cnot_clifford(BitMatrix::identity(3)).c(), BitMatrix::identity(6));
    BitMatrix perm = BitMatrix::from_rows({"010", "001", "100"});
    BitMatrix c = cnot_clifford(perm).c();
    EXPECT_EQ(c.block(0, 0, 3, 3), perm);
    EXPECT_EQ(c.block(3, 3, 3, 3), perm);
    std::mt19937_64 rng(2);
    for (int t = 0; t < 20; ++t) {
        EXPECT_TRUE(is_symplectic(cnot_clifford(random_invertible(6, rng)).c()));
    }
    EXPECT_THROW(cnot_clifford(BitMatrix::from_rows({"11", "11"})), std::invalid_argument);
}

TEST(PhaseCorrection, SolvesSymplecticSystem) {
    StabilizerRep zero(BitMatrix::from_rows({"1", "0"}));
    auto g = phase_correction_pauli(zero, BitVector::from_string("1"));
    ASSERT_TRUE(g.has_value());
    EXPECT_EQ(g->a.str(), "01");
    StabilizerRep ring = graph_state_rep(ring5_adjacency());
    BitMatrix stp = matmul(ring.s().transpose(), BitMatrix::symplectic_form(5));
    for (uint64_t f = 0; f < 32; ++f) {
        BitVector fv = BitVector::from_uint(5, f);
        auto gf = phase_correction_pauli(ring, fv);
        ASSERT_TRUE(gf.has_value());
        EXPECT_EQ(matvec(stp, gf->a), fv);
    }
}

TEST(TensorClifford, InterleavedBlocks) {
    EXPECT_EQ(tensor_clifford(CliffordRep::identity(1), CliffordRep::identity(2)).c(), BitMatrix::identity(6));
    // Hadamard swaps z and x on its qubit.
    CliffordRep h(BitMatrix::from_rows({"01", "10"}));
    CliffordRep phase(BitMatrix::from_rows({"11", "01"}));
    BitMatrix c = tensor_clifford(h, phase).c();
    // Rows/cols ordered (z1, z2, x1, x2).
    EXPECT_EQ(c, BitMatrix::from_rows({"0010", "0101", "1000", "0001"}));
    EXPECT_TRUE(is_symplectic(c));
}

TEST(CopiesRep, Kronecker) {
    BitMatrix z = BitMatrix::from_rows({"1", "0"});
    EXPECT_EQ(copies_rep(z, 1), z);
    EXPECT_EQ(copies_rep(z, 2), BitMatrix::from_rows({"10", "01", "00", "00"}));
    BitMatrix ring = graph_state_rep(ring5_adjacency()).s();
    BitMatrix big = copies_rep(ring, 4);
    EXPECT_EQ(rank(big), 20u);
    EXPECT_TRUE(matmul(matmul(big.transpose(), BitMatrix::symplectic_form(20)), big).is_zero());
    EXPECT_THROW(copies_rep(z, 0), std::invalid_argument);
}

TEST(BreedingTransform, PerSegment) {
    BitMatrix perm = BitMatrix::from_rows({"010", "001", "100"});
    BitVector bbar = BitVector::from_string("100110");
    EXPECT_EQ(breeding_transform(bbar, BitMatrix::identity(3), 2), bbar);
    EXPECT_EQ(breeding_transform(bbar, perm, 2).str(), "001101");
    EXPECT_EQ(breeding_transform(breeding_transform(bbar, perm, 2), perm.transpose(), 2), bbar);
    EXPECT_THROW(breeding_transform(bbar, BitMatrix::from_rows({"11", "01"}), 3), std::invalid_argument);
    EXPECT_THROW(breeding_transform(bbar, perm, 3), std::invalid_argument);
}

TEST(Reindex, RoundTrip) {
    BitVector per_copy = BitVector::from_string("110001");  // copy 0: 11, copy 1: 00, copy 2: 01
    BitVector per_party = per_copy_to_per_party(per_copy, 2, 3);
    EXPECT_EQ(per_party.str(), "100101");
    EXPECT_EQ(per_party_to_per_copy(per_party, 2, 3), per_copy);
}

TEST(GraphState, RingAndEdgeless) {
    StabilizerRep ring = graph_state_rep(ring5_adjacency());
    EXPECT_EQ(ring.s_z(), BitMatrix::from_rows({"00110", "00011", "10001", "11000", "01100"}));
    EXPECT_EQ(ring.s_x(), BitMatrix::identity(5));
    EXPECT_TRUE(ring.b().is_zero());
    StabilizerRep plus = graph_state_rep(BitMatrix(3, 3));
    EXPECT_TRUE(plus.s_z().is_zero());
    EXPECT_THROW(graph_state_rep(BitMatrix::from_rows({"01", "00"})), std::invalid_argument);
    EXPECT_THROW(graph_state_rep(BitMatrix::from_rows({"10", "00"})), std::invalid_argument);
}

TEST(StabilizerText, RoundTrip) {
    StabilizerRep ring(graph_state_rep(ring5_adjacency()).s(), BitVector::from_string("10010"));
    EXPECT_EQ(parse_stabilizer(format_stabilizer(ring)), ring);
    StabilizerRep no_b = parse_stabilizer("2 1\n1\n0\n");
    EXPECT_TRUE(no_b.b().is_zero());
    EXPECT_THROW(parse_stabilizer("2 1\n1\n1\n11\n"), ParseError);
    EXPECT_THROW(parse_stabilizer("4 2\n10\n01\n01\n00\n"), ParseError);
}

}  // namespace
}  // namespace stabbreed
