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

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stabbreed/errors.hpp"

namespace stabbreed {

/// Dense bit vector over GF(2). Bits past `size()` are kept zero.
class BitVector {
   public:
    BitVector() = default;
    explicit BitVector(size_t len);

    static BitVector ones(size_t len);
    static BitVector unit(size_t len, size_t index);
    /// Parses a string of '0'/'1' characters.
    static BitVector from_string(std::string_view bits);
    /// Low `len` bits of `value`, bit i of value -> coordinate i.
    static BitVector from_uint(size_t len, uint64_t value);

    size_t size() const { return len_; }
    bool get(size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(size_t i, bool value);
    void flip(size_t i) { words_[i >> 6] ^= uint64_t{1} << (i & 63); }

    BitVector &operator^=(const BitVector &other);
    friend BitVector operator^(BitVector a, const BitVector &b) { return a ^= b; }
    bool operator==(const BitVector &other) const = default;

    /// Parity of the coordinatewise product.
    bool dot(const BitVector &other) const;
    size_t weight() const;
    bool is_zero() const;
    /// Coordinates [begin, begin + count).
    BitVector slice(size_t begin, size_t count) const;
    /// Packed value of the first min(64, size()) bits.
    uint64_t to_uint() const;

    std::span<uint64_t> words() { return words_; }
    std::span<const uint64_t> words() const { return words_; }

    std::string str() const;

   private:
    size_t len_ = 0;
    std::vector<uint64_t> words_;
};

BitVector concat(const BitVector &a, const BitVector &b);

/// Dense row-major bit-packed matrix over GF(2).
///
/// Empty shapes (0 rows or 0 columns) are valid; products over an empty inner
/// dimension are zero matrices.
class BitMatrix {
   public:
    BitMatrix() = default;
    BitMatrix(size_t rows, size_t cols);

    static BitMatrix identity(size_t n);
    /// [[0, I_n], [I_n, 0]], the symplectic form on 2n coordinates.
    static BitMatrix symplectic_form(size_t n);
    /// Rows given as strings of '0'/'1'.
    static BitMatrix from_rows(const std::vector<std::string> &rows);
    static BitMatrix from_columns(const std::vector<BitVector> &cols, size_t len);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    bool get(size_t r, size_t c) const { return (row_words(r)[c >> 6] >> (c & 63)) & 1u; }
    void set(size_t r, size_t c, bool value);
    void flip(size_t r, size_t c) { row_words(r)[c >> 6] ^= uint64_t{1} << (c & 63); }

    std::span<uint64_t> row_words(size_t r) { return {data_.data() + r * stride_, stride_}; }
    std::span<const uint64_t> row_words(size_t r) const { return {data_.data() + r * stride_, stride_}; }

    BitVector row(size_t r) const;
    BitVector col(size_t c) const;
    void set_row(size_t r, const BitVector &v);
    void set_col(size_t c, const BitVector &v);
    /// row[dst] ^= row[src]
    void xor_row(size_t dst, size_t src);
    void swap_rows(size_t a, size_t b);
    void swap_cols(size_t a, size_t b);

    BitMatrix transpose() const;
    BitMatrix block(size_t row0, size_t col0, size_t nrows, size_t ncols) const;
    void set_block(size_t row0, size_t col0, const BitMatrix &src);

    BitMatrix &operator^=(const BitMatrix &other);
    friend BitMatrix operator+(BitMatrix a, const BitMatrix &b) { return a ^= b; }
    bool operator==(const BitMatrix &other) const = default;

    bool is_zero() const;
    bool is_square() const { return rows_ == cols_; }
    bool is_symmetric() const;
    bool has_zero_diagonal() const;

    std::string str() const;

   private:
    size_t rows_ = 0;
    size_t cols_ = 0;
    size_t stride_ = 0;
    std::vector<uint64_t> data_;
};

std::ostream &operator<<(std::ostream &out, const BitVector &v);
std::ostream &operator<<(std::ostream &out, const BitMatrix &m);

BitMatrix matmul(const BitMatrix &a, const BitMatrix &b);
BitVector matvec(const BitMatrix &a, const BitVector &x);
BitMatrix hstack(const BitMatrix &left, const BitMatrix &right);
BitMatrix vstack(const BitMatrix &top, const BitMatrix &bottom);
/// Kronecker product a ⊗ b.
BitMatrix kron(const BitMatrix &a, const BitMatrix &b);
BitMatrix block_diag(const BitMatrix &a, const BitMatrix &b);

/// Result of Gauss-Jordan elimination: the reduced row echelon form and its
/// pivot columns (leftmost pivot, topmost row).
struct Echelon {
    BitMatrix reduced;
    std::vector<size_t> pivots;
    size_t rank() const { return pivots.size(); }
};

Echelon row_reduce(BitMatrix m);
size_t rank(const BitMatrix &m);
/// Columns form a basis of {x : m x = 0}.
BitMatrix nullspace_basis(const BitMatrix &m);
/// Some x with a x = b, if one exists.
std::optional<BitVector> solve(const BitMatrix &a, const BitVector &b);
std::optional<BitMatrix> inverse(const BitMatrix &m);

/// C^T P C == P. Throws on odd or non-square dimension.
bool is_symplectic(const BitMatrix &c);
bool is_orthogonal(const BitMatrix &a);

/// Text format: a "rows cols" header line followed by `rows` lines of '0'/'1'.
std::string format_matrix(const BitMatrix &m);
BitMatrix parse_matrix(std::string_view text);

/// Parses a matrix starting at lines[pos]; advances pos past it.
BitMatrix parse_matrix_lines(const std::vector<TextLine> &lines, size_t &pos);

}  // namespace stabbreed
