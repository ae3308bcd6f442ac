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

#include <random>

#include "stabbreed/gf2.hpp"

namespace stabbreed::testing {

inline BitMatrix random_matrix(size_t rows, size_t cols, std::mt19937_64 &rng) {
    BitMatrix m(rows, cols);
    std::bernoulli_distribution coin(0.5);
    for (size_t r = 0; r < rows; ++r) {
        for (size_t c = 0; c < cols; ++c) {
            m.set(r, c, coin(rng));
        }
    }
    return m;
}

inline BitMatrix random_symmetric(size_t n, std::mt19937_64 &rng) {
    BitMatrix m(n, n);
    std::bernoulli_distribution coin(0.5);
    for (size_t r = 0; r < n; ++r) {
        for (size_t c = r; c < n; ++c) {
            bool v = coin(rng);
            m.set(r, c, v);
            m.set(c, r, v);
        }
    }
    return m;
}

// Symmetric n x n matrix whose upper triangle (row-major, diagonal included)
// is read from the bits of `code`.
inline BitMatrix symmetric_from_code(size_t n, uint64_t code) {
    BitMatrix m(n, n);
    size_t bit = 0;
    for (size_t r = 0; r < n; ++r) {
        for (size_t c = r; c < n; ++c, ++bit) {
            bool v = (code >> bit) & 1u;
            m.set(r, c, v);
            m.set(c, r, v);
        }
    }
    return m;
}


// Textbook triple loop.
inline BitMatrix naive_matmul(const BitMatrix &a, const BitMatrix &b) {
    BitMatrix out(a.rows(), b.cols());
    for (size_t i = 0; i < a.rows(); ++i) {
        for (size_t j = 0; j < b.cols(); ++j) {
            bool acc = false;
            for (size_t k = 0; k < a.cols(); ++k) {
                acc ^= a.get(i, k) && b.get(k, j);
            }
            out.set(i, j, acc);
        }
    }
    return out;
}

}  // namespace stabbreed::testing
