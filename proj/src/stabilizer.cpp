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

#include "stabbreed/stabilizer.hpp"

#include <stdexcept>

namespace stabbreed {

bool commutes(const PauliRep &p, const PauliRep &q) {
    if (p.a.size() != q.a.size() || p.a.size() % 2 != 0) {
        throw std::invalid_argument("commutes: Pauli lengths must be equal and even");
    }
    return p.z_part().dot(q.x_part()) == p.x_part().dot(q.z_part());
}

StabilizerRep::StabilizerRep(BitMatrix s, BitVector b) : s_(std::move(s)), b_(std::move(b)) {
    size_t n = s_.cols();
    if (s_.rows() != 2 * n) {
        throw std::invalid_argument("stabilizer matrix must be 2n x n");
    }
    if (b_.size() != n) {
        throw std::invalid_argument("phase vector must have length n");
    }
    if (rank(s_) != n) {
        throw std::invalid_argument("stabilizer generators are linearly dependent");
    }
    BitMatrix form = matmul(matmul(s_.transpose(), BitMatrix::symplectic_form(n)), s_);
    if (!form.is_zero()) {
        throw std::invalid_argument("stabilizer generators do not commute (S^T P S != 0)");
    }
}

StabilizerRep::StabilizerRep(BitMatrix s) : StabilizerRep(s, BitVector(s.cols())) {}

CliffordRep::CliffordRep(BitMatrix c) : c_(std::move(c)) {
    if (!is_symplectic(c_)) {
        throw std::invalid_argument("Clifford matrix is not symplectic");
    }
}

StabilizerRep tensor_stab(const StabilizerRep &r1, const StabilizerRep &r2) {
    size_t n1 = r1.num_qubits();
    size_t n2 = r2.num_qubits();
    size_t n = n1 + n2;
    BitMatrix s(2 * n, n);
    s.set_block(0, 0, r1.s_z());
    s.set_block(n1, n1, r2.s_z());
    s.set_block(n, 0, r1.s_x());
    s.set_block(n + n1, n1, r2.s_x());
    return StabilizerRep(std::move(s), concat(r1.b(), r2.b()));
}

StabilizerRep change_generators(const StabilizerRep &r, const BitMatrix &rmat) {
    if (rmat.rows() != r.num_qubits() || !rmat.is_square()) {
        throw std::invalid_argument("change_generators: R must be n x n");
    }
    if (!inverse(rmat)) {
        throw std::invalid_argument("change_generators: R is singular");
    }
    return StabilizerRep(matmul(r.s(), rmat), matvec(rmat.transpose(), r.b()));
}

StabilizerRep apply_clifford(const CliffordRep &q, const StabilizerRep &r) {
    if (q.num_qubits() != r.num_qubits()) {
        throw std::invalid_argument("apply_clifford: qubit count mismatch");
    }
    return StabilizerRep(matmul(q.c(), r.s()), r.b());
}

std::optional<PauliRep> phase_correction_pauli(const StabilizerRep &r, const BitVector &f) {
    if (f.size() != r.num_qubits()) {
        throw std::invalid_argument("phase_correction_pauli: f must have length n");
    }
    BitMatrix lhs = matmul(r.s().transpose(), BitMatrix::symplectic_form(r.num_qubits()));
    auto g = solve(lhs, f);
    if (!g) {
        return std::nullopt;
    }
    return PauliRep{*g, false};
}

CliffordRep tensor_clifford(const CliffordRep &q1, const CliffordRep &q2) {
    size_t n1 = q1.num_qubits();
    size_t n2 = q2.num_qubits();
    size_t n = n1 + n2;
    BitMatrix c(2 * n, 2 * n);
    // Block (i, j) of each operand lands at block (i, j) of the result, with
    // operand 2 offset by n1 inside each half.
    for (size_t bi = 0; bi < 2; ++bi) {
        for (size_t bj = 0; bj < 2; ++bj) {
            c.set_block(bi * n, bj * n, q1.c().block(bi * n1, bj * n1, n1, n1));
            c.set_block(bi * n + n1, bj * n + n1, q2.c().block(bi * n2, bj * n2, n2, n2));
        }
    }
    return CliffordRep(std::move(c));
}

CliffordRep cnot_clifford(const BitMatrix &a) {
    if (!a.is_square()) {
        throw std::invalid_argument("cnot_clifford: A must be square");
    }
    auto inv = inverse(a);
    if (!inv) {
        throw std::invalid_argument("cnot_clifford: A is singular");
    }
    return CliffordRep(block_diag(a, inv->transpose()));
}

BitMatrix copies_rep(const BitMatrix &s, size_t kbar) {
    if (kbar == 0) {
        throw std::invalid_argument("copies_rep: need at least one copy");
    }
    if (s.rows() != 2 * s.cols()) {
        throw std::invalid_argument("copies_rep: S must be 2n x n");
    }
    return kron(s, BitMatrix::identity(kbar));
}

BitVector breeding_transform(const BitVector &bbar, const BitMatrix &a, size_t n) {
    if (!is_orthogonal(a)) {
        throw std::invalid_argument("breeding_transform: A must be orthogonal");
    }
    size_t kbar = a.rows();
    if (bbar.size() != n * kbar) {
        throw std::invalid_argument("breeding_transform: phase vector length must be n * kbar");
    }
    BitVector out(bbar.size());
    for (size_t party = 0; party < n; ++party) {
        BitVector segment = matvec(a, bbar.slice(party * kbar, kbar));
        for (size_t i = 0; i < kbar; ++i) {
            out.set(party * kbar + i, segment.get(i));
        }
    }
    return out;
}

BitVector per_copy_to_per_party(const BitVector &bits, size_t n, size_t copies) {
    if (bits.size() != n * copies) {
        throw std::invalid_argument("reindex: length must be n * copies");
    }
    BitVector out(bits.size());
    for (size_t copy = 0; copy < copies; ++copy) {
        for (size_t party = 0; party < n; ++party) {
            out.set(party * copies + copy, bits.get(copy * n + party));
        }
    }
    return out;
}

BitVector per_party_to_per_copy(const BitVector &bits, size_t n, size_t copies) {
    if (bits.size() != n * copies) {
        throw std::invalid_argument("reindex: length must be n * copies");
    }
    BitVector out(bits.size());
    for (size_t copy = 0; copy < copies; ++copy) {
        for (size_t party = 0; party < n; ++party) {
            out.set(copy * n + party, bits.get(party * copies + copy));
        }
    }
    return out;
}

StabilizerRep graph_state_rep(const BitMatrix &theta) {
    if (!theta.is_symmetric()) {
        throw std::invalid_argument("graph adjacency must be symmetric");
    }
    if (!theta.has_zero_diagonal()) {
        throw std::invalid_argument("graph adjacency must have a zero diagonal");
    }
    return StabilizerRep(vstack(theta, BitMatrix::identity(theta.rows())));
}

BitMatrix ring5_adjacency() {
    return BitMatrix::from_rows({
        "00110",
        "00011",
        "10001",
        "11000",
        "01100",
    });
}

StabilizerRep parse_stabilizer(std::string_view text) {
    auto lines = significant_lines(text);
    size_t pos = 0;
    BitMatrix s = parse_matrix_lines(lines, pos);
    size_t n = s.cols();
    if (s.rows() != 2 * n) {
        throw ParseError(lines.front().number, "stabilizer matrix must be 2n x n");
    }
    BitVector b(n);
    if (pos < lines.size()) {
        const auto &line = lines[pos];
        if (line.text.size() != n || line.text.find_first_not_of("01") != std::string::npos) {
            throw ParseError(line.number, "phase line must be " + std::to_string(n) + " bits");
        }
        b = BitVector::from_string(line.text);
        ++pos;
    }
    if (pos < lines.size()) {
        throw ParseError(lines[pos].number, "trailing content after stabilizer");
    }
    try {
        return StabilizerRep(std::move(s), std::move(b));
    } catch (const std::invalid_argument &e) {
        throw ParseError(lines.front().number, e.what());
    }
}

std::string format_stabilizer(const StabilizerRep &r) { return format_matrix(r.s()) + r.b().str() + "\n"; }

}  // namespace stabbreed
