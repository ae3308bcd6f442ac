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

#include "stabbreed/gf2.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "stabbreed/errors.hpp"

namespace stabbreed {

namespace {

size_t words_for(size_t bits) { return (bits + 63) / 64; }

uint64_t tail_mask(size_t bits) {
    size_t rem = bits & 63;
    return rem == 0 ? ~uint64_t{0} : (uint64_t{1} << rem) - 1;
}

void require(bool cond, const char *what) {
    if (!cond) {
        throw std::invalid_argument(what);
    }
}

}  // namespace

std::vector<TextLine> significant_lines(std::string_view text) {
    std::vector<TextLine> out;
    size_t number = 0;
    while (!text.empty()) {
        ++number;
        size_t end = text.find('\n');
        std::string_view line = text.substr(0, end);
        text = end == std::string_view::npos ? std::string_view{} : text.substr(end + 1);
        if (size_t hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) {
            line.remove_suffix(1);
        }
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front()))) {
            line.remove_prefix(1);
        }
        if (!line.empty()) {
            out.push_back({number, std::string(line)});
        }
    }
    return out;
}

// ---------------------------------------------------------------- BitVector

BitVector::BitVector(size_t len) : len_(len), words_(words_for(len), 0) {}

BitVector BitVector::ones(size_t len) {
    BitVector v(len);
    std::fill(v.words_.begin(), v.words_.end(), ~uint64_t{0});
    if (!v.words_.empty()) {
        v.words_.back() &= tail_mask(len);
    }
    return v;
}

BitVector BitVector::unit(size_t len, size_t index) {
    require(index < len, "unit vector index out of range");
    BitVector v(len);
    v.set(index, true);
    return v;
}

BitVector BitVector::from_string(std::string_view bits) {
    BitVector v(bits.size());
    for (size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1') {
            v.set(i, true);
        } else if (bits[i] != '0') {
            throw std::invalid_argument("bit string may only contain '0' and '1'");
        }
    }
    return v;
}

BitVector BitVector::from_uint(size_t len, uint64_t value) {
    BitVector v(len);
    if (len > 0) {
        v.words_[0] = len >= 64 ? value : value & tail_mask(len);
    }
    return v;
}

void BitVector::set(size_t i, bool value) {
    uint64_t bit = uint64_t{1} << (i & 63);
    if (value) {
        words_[i >> 6] |= bit;
    } else {
        words_[i >> 6] &= ~bit;
    }
}

BitVector &BitVector::operator^=(const BitVector &other) {
    require(len_ == other.len_, "bit vector length mismatch");
    for (size_t w = 0; w < words_.size(); ++w) {
        words_[w] ^= other.words_[w];
    }
    return *this;
}

bool BitVector::dot(const BitVector &other) const {
    require(len_ == other.len_, "bit vector length mismatch");
    uint64_t acc = 0;
    for (size_t w = 0; w < words_.size(); ++w) {
        acc ^= words_[w] & other.words_[w];
    }
    return std::popcount(acc) & 1;
}

size_t BitVector::weight() const {
    size_t total = 0;
    for (uint64_t w : words_) {
        total += std::popcount(w);
    }
    return total;
}

bool BitVector::is_zero() const {
    return std::all_of(words_.begin(), words_.end(), [](uint64_t w) { return w == 0; });
}

BitVector BitVector::slice(size_t begin, size_t count) const {
    require(begin + count <= len_, "slice out of range");
    BitVector out(count);
    for (size_t i = 0; i < count; ++i) {
        out.set(i, get(begin + i));
    }
    return out;
}

uint64_t BitVector::to_uint() const { return words_.empty() ? 0 : words_[0]; }

std::string BitVector::str() const {
    std::string s(len_, '0');
    for (size_t i = 0; i < len_; ++i) {
        if (get(i)) {
            s[i] = '1';
        }
    }
    return s;
}

BitVector concat(const BitVector &a, const BitVector &b) {
    BitVector out(a.size() + b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        out.set(i, a.get(i));
    }
    for (size_t i = 0; i < b.size(); ++i) {
        out.set(a.size() + i, b.get(i));
    }
    return out;
}

std::ostream &operator<<(std::ostream &out, const BitVector &v) { return out << v.str(); }

// ---------------------------------------------------------------- BitMatrix

BitMatrix::BitMatrix(size_t rows, size_t cols)
    : rows_(rows), cols_(cols), stride_(words_for(cols)), data_(rows * words_for(cols), 0) {}

BitMatrix BitMatrix::identity(size_t n) {
    BitMatrix m(n, n);
    for (size_t i = 0; i < n; ++i) {
        m.set(i, i, true);
    }
    return m;
}

BitMatrix BitMatrix::symplectic_form(size_t n) {
    BitMatrix p(2 * n, 2 * n);
    for (size_t i = 0; i < n; ++i) {
        p.set(i, n + i, true);
        p.set(n + i, i, true);
    }
    return p;
}

BitMatrix BitMatrix::from_rows(const std::vector<std::string> &rows) {
    size_t cols = rows.empty() ? 0 : rows[0].size();
    BitMatrix m(rows.size(), cols);
    for (size_t r = 0; r < rows.size(); ++r) {
        require(rows[r].size() == cols, "ragged matrix rows");
        m.set_row(r, BitVector::from_string(rows[r]));
    }
    return m;
}

BitMatrix BitMatrix::from_columns(const std::vector<BitVector> &cols, size_t len) {
    BitMatrix m(len, cols.size());
    for (size_t c = 0; c < cols.size(); ++c) {
        m.set_col(c, cols[c]);
    }
    return m;
}

void BitMatrix::set(size_t r, size_t c, bool value) {
    uint64_t bit = uint64_t{1} << (c & 63);
    uint64_t &w = row_words(r)[c >> 6];
    w = value ? (w | bit) : (w & ~bit);
}

BitVector BitMatrix::row(size_t r) const {
    BitVector v(cols_);
    std::copy_n(row_words(r).begin(), stride_, v.words().begin());
    return v;
}

BitVector BitMatrix::col(size_t c) const {
    BitVector v(rows_);
    for (size_t r = 0; r < rows_; ++r) {
        if (get(r, c)) {
            v.set(r, true);
        }
    }
    return v;
}

void BitMatrix::set_row(size_t r, const BitVector &v) {
    require(v.size() == cols_, "row length mismatch");
    std::copy_n(v.words().begin(), stride_, row_words(r).begin());
}

void BitMatrix::set_col(size_t c, const BitVector &v) {
    require(v.size() == rows_, "column length mismatch");
    for (size_t r = 0; r < rows_; ++r) {
        set(r, c, v.get(r));
    }
}

void BitMatrix::xor_row(size_t dst, size_t src) {
    auto d = row_words(dst);
    auto s = row_words(src);
    for (size_t w = 0; w < stride_; ++w) {
        d[w] ^= s[w];
    }
}

void BitMatrix::swap_rows(size_t a, size_t b) {
    if (a == b) {
        return;
    }
    std::swap_ranges(row_words(a).begin(), row_words(a).end(), row_words(b).begin());
}

void BitMatrix::swap_cols(size_t a, size_t b) {
    if (a == b) {
        return;
    }
    for (size_t r = 0; r < rows_; ++r) {
        bool x = get(r, a);
        bool y = get(r, b);
        if (x != y) {
            flip(r, a);
            flip(r, b);
        }
    }
}

BitMatrix BitMatrix::transpose() const {
    BitMatrix t(cols_, rows_);
    for (size_t r = 0; r < rows_; ++r) {
        auto words = row_words(r);
        for (size_t w = 0; w < stride_; ++w) {
            uint64_t bits = words[w];
            while (bits) {
                size_t c = w * 64 + std::countr_zero(bits);
                t.set(c, r, true);
                bits &= bits - 1;
            }
        }
    }
    return t;
}

BitMatrix BitMatrix::block(size_t row0, size_t col0, size_t nrows, size_t ncols) const {
    require(row0 + nrows <= rows_ && col0 + ncols <= cols_, "block out of range");
    BitMatrix out(nrows, ncols);
    for (size_t r = 0; r < nrows; ++r) {
        for (size_t c = 0; c < ncols; ++c) {
            if (get(row0 + r, col0 + c)) {
                out.set(r, c, true);
            }
        }
    }
    return out;
}

void BitMatrix::set_block(size_t row0, size_t col0, const BitMatrix &src) {
    require(row0 + src.rows_ <= rows_ && col0 + src.cols_ <= cols_, "block out of range");
    for (size_t r = 0; r < src.rows_; ++r) {
        for (size_t c = 0; c < src.cols_; ++c) {
            set(row0 + r, col0 + c, src.get(r, c));
        }
    }
}

BitMatrix &BitMatrix::operator^=(const BitMatrix &other) {
    require(rows_ == other.rows_ && cols_ == other.cols_, "matrix dimension mismatch");
    for (size_t i = 0; i < data_.size(); ++i) {
        data_[i] ^= other.data_[i];
    }
    return *this;
}

bool BitMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](uint64_t w) { return w == 0; });
}

bool BitMatrix::is_symmetric() const { return is_square() && *this == transpose(); }

bool BitMatrix::has_zero_diagonal() const {
    for (size_t i = 0; i < std::min(rows_, cols_); ++i) {
        if (get(i, i)) {
            return false;
        }
    }
    return true;
}

std::string BitMatrix::str() const {
    std::string s;
    for (size_t r = 0; r < rows_; ++r) {
        s += row(r).str();
        s += '\n';
    }
    return s;
}

std::ostream &operator<<(std::ostream &out, const BitMatrix &m) { return out << m.str(); }

// ---------------------------------------------------------------- algebra

BitMatrix matmul(const BitMatrix &a, const BitMatrix &b) {
    require(a.cols() == b.rows(), "matmul: inner dimension mismatch");
    BitMatrix out(a.rows(), b.cols());
    for (size_t i = 0; i < a.rows(); ++i) {
        auto dst = out.row_words(i);
        auto arow = a.row_words(i);
        for (size_t w = 0; w < arow.size(); ++w) {
            uint64_t bits = arow[w];
            while (bits) {
                size_t k = w * 64 + std::countr_zero(bits);
                auto src = b.row_words(k);
                for (size_t x = 0; x < dst.size(); ++x) {
                    dst[x] ^= src[x];
                }
                bits &= bits - 1;
            }
        }
    }
    return out;
}

BitVector matvec(const BitMatrix &a, const BitVector &x) {
    require(a.cols() == x.size(), "matvec: dimension mismatch");
    BitVector out(a.rows());
    for (size_t r = 0; r < a.rows(); ++r) {
        uint64_t acc = 0;
        auto row = a.row_words(r);
        auto xs = x.words();
        for (size_t w = 0; w < row.size(); ++w) {
            acc ^= row[w] & xs[w];
        }
        if (std::popcount(acc) & 1) {
            out.set(r, true);
        }
    }
    return out;
}

BitMatrix hstack(const BitMatrix &left, const BitMatrix &right) {
    require(left.rows() == right.rows(), "hstack: row count mismatch");
    BitMatrix out(left.rows(), left.cols() + right.cols());
    out.set_block(0, 0, left);
    out.set_block(0, left.cols(), right);
    return out;
}

BitMatrix vstack(const BitMatrix &top, const BitMatrix &bottom) {
    require(top.cols() == bottom.cols(), "vstack: column count mismatch");
    BitMatrix out(top.rows() + bottom.rows(), top.cols());
    for (size_t r = 0; r < top.rows(); ++r) {
        std::copy_n(top.row_words(r).begin(), top.row_words(r).size(), out.row_words(r).begin());
    }
    for (size_t r = 0; r < bottom.rows(); ++r) {
        std::copy_n(bottom.row_words(r).begin(), bottom.row_words(r).size(), out.row_words(top.rows() + r).begin());
    }
    return out;
}

BitMatrix kron(const BitMatrix &a, const BitMatrix &b) {
    BitMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (size_t i = 0; i < a.rows(); ++i) {
        for (size_t j = 0; j < a.cols(); ++j) {
            if (a.get(i, j)) {
                out.set_block(i * b.rows(), j * b.cols(), b);
            }
        }
    }
    return out;
}

BitMatrix block_diag(const BitMatrix &a, const BitMatrix &b) {
    BitMatrix out(a.rows() + b.rows(), a.cols() + b.cols());
    out.set_block(0, 0, a);
    out.set_block(a.rows(), a.cols(), b);
    return out;
}

Echelon row_reduce(BitMatrix m) {
    Echelon e;
    size_t next_row = 0;
    for (size_t c = 0; c < m.cols() && next_row < m.rows(); ++c) {
        size_t pivot = next_row;
        while (pivot < m.rows() && !m.get(pivot, c)) {
            ++pivot;
        }
        if (pivot == m.rows()) {
            continue;
        }
        m.swap_rows(pivot, next_row);
        for (size_t r = 0; r < m.rows(); ++r) {
            if (r != next_row && m.get(r, c)) {
                m.xor_row(r, next_row);
            }
        }
        e.pivots.push_back(c);
        ++next_row;
    }
    e.reduced = std::move(m);
    return e;
}

size_t rank(const BitMatrix &m) { return row_reduce(m).rank(); }

BitMatrix nullspace_basis(const BitMatrix &m) {
    Echelon e = row_reduce(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (size_t c : e.pivots) {
        is_pivot[c] = true;
    }
    BitMatrix basis(m.cols(), m.cols() - e.rank());
    size_t out = 0;
    for (size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) {
            continue;
        }
        basis.set(free, out, true);
        for (size_t r = 0; r < e.rank(); ++r) {
            if (e.reduced.get(r, free)) {
                basis.set(e.pivots[r], out, true);
            }
        }
        ++out;
    }
    return basis;
}

std::optional<BitVector> solve(const BitMatrix &a, const BitVector &b) {
    require(a.rows() == b.size(), "solve: dimension mismatch");
    BitMatrix augmented(a.rows(), a.cols() + 1);
    augmented.set_block(0, 0, a);
    for (size_t r = 0; r < a.rows(); ++r) {
        augmented.set(r, a.cols(), b.get(r));
    }
    Echelon e = row_reduce(std::move(augmented));
    if (!e.pivots.empty() && e.pivots.back() == a.cols()) {
        return std::nullopt;
    }
    BitVector x(a.cols());
    for (size_t r = 0; r < e.rank(); ++r) {
        x.set(e.pivots[r], e.reduced.get(r, a.cols()));
    }
    return x;
}

std::optional<BitMatrix> inverse(const BitMatrix &m) {
    require(m.is_square(), "inverse: matrix must be square");
    size_t n = m.rows();
    Echelon e = row_reduce(hstack(m, BitMatrix::identity(n)));
    if (e.rank() < n || (n > 0 && e.pivots[n - 1] != n - 1)) {
        return std::nullopt;
    }
    return e.reduced.block(0, n, n, n);
}

bool is_symplectic(const BitMatrix &c) {
    require(c.is_square() && c.rows() % 2 == 0, "is_symplectic: need a 2n x 2n matrix");
    BitMatrix p = BitMatrix::symplectic_form(c.rows() / 2);
    return matmul(matmul(c.transpose(), p), c) == p;
}

bool is_orthogonal(const BitMatrix &a) {
    if (!a.is_square()) {
        return false;
    }
    return matmul(a.transpose(), a) == BitMatrix::identity(a.rows());
}

// ---------------------------------------------------------------- text I/O

std::string format_matrix(const BitMatrix &m) {
    std::string s = std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
    return s + m.str();
}

BitMatrix parse_matrix_lines(const std::vector<TextLine> &lines, size_t &pos) {
    if (pos >= lines.size()) {
        throw ParseError(lines.empty() ? 0 : lines.back().number, "expected 'rows cols' header");
    }
    const TextLine &head = lines[pos];
    std::istringstream header(head.text);
    size_t rows = 0;
    size_t cols = 0;
    std::string extra;
    if (!(header >> rows >> cols) || (header >> extra)) {
        throw ParseError(head.number, "expected 'rows cols' header");
    }
    BitMatrix m(rows, cols);
    for (size_t r = 0; r < rows; ++r) {
        if (pos + 1 + r >= lines.size()) {
            throw ParseError(lines.back().number, "expected " + std::to_string(rows) + " matrix rows, found " +
                                                      std::to_string(r));
        }
        const auto &line = lines[pos + 1 + r];
        if (line.text.size() != cols) {
            throw ParseError(line.number, "expected " + std::to_string(cols) + " bits, found " +
                                              std::to_string(line.text.size()));
        }
        for (size_t c = 0; c < cols; ++c) {
            char ch = line.text[c];
            if (ch != '0' && ch != '1') {
                throw ParseError(line.number, std::string("invalid bit character '") + ch + "'");
            }
            m.set(r, c, ch == '1');
        }
    }
    pos += rows + 1;
    return m;
}

BitMatrix parse_matrix(std::string_view text) {
    auto lines = significant_lines(text);
    if (lines.empty()) {
        throw ParseError(0, "empty matrix input");
    }
    size_t pos = 0;
    BitMatrix m = parse_matrix_lines(lines, pos);
    if (pos < lines.size()) {
        throw ParseError(lines[pos].number, "trailing content after matrix");
    }
    return m;
}

}  // namespace stabbreed
