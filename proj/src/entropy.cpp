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

#include "stabbreed/entropy.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace stabbreed {

// ---------------------------------------------------------------- NoiseModel

NoiseModel::NoiseModel(size_t n, std::vector<double> p) : n_(n), p_(std::move(p)) {
    if (n_ > kMaxNoiseQubits) {
        throw std::invalid_argument("noise model over " + std::to_string(n_) + " qubits exceeds the limit of " +
                                    std::to_string(kMaxNoiseQubits));
    }
    if (p_.size() != (size_t{1} << n_)) {
        throw std::invalid_argument("noise table must have 2^n entries");
    }
    double total = 0.0;
    for (double x : p_) {
        if (!(x >= 0.0)) {
            throw std::invalid_argument("noise probabilities must be nonnegative");
        }
        total += x;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw std::invalid_argument("noise probabilities must sum to 1");
    }
}

NoiseModel NoiseModel::werner(size_t n, double fidelity) {
    if (!(fidelity >= 0.0 && fidelity <= 1.0)) {
        throw std::invalid_argument("fidelity must lie in [0, 1]");
    }
    if (n > kMaxNoiseQubits) {
        throw std::invalid_argument("noise model over " + std::to_string(n) + " qubits exceeds the limit of " +
                                    std::to_string(kMaxNoiseQubits));
    }
    size_t count = size_t{1} << n;
    std::vector<double> p(count, count > 1 ? (1.0 - fidelity) / static_cast<double>(count - 1) : 0.0);
    p[0] = count > 1 ? fidelity : 1.0;
    return NoiseModel(n, std::move(p));
}

NoiseModel parse_noise_model(std::string_view text, size_t n) {
    auto lines = significant_lines(text);
    if (lines.empty()) {
        throw ParseError(0, "empty noise model");
    }
    if (lines[0].text.rfind("werner", 0) == 0) {
        std::istringstream in(lines[0].text.substr(6));
        double fidelity = 0.0;
        std::string extra;
        if (!(in >> fidelity) || (in >> extra)) {
            throw ParseError(lines[0].number, "expected 'werner F'");
        }
        if (lines.size() > 1) {
            throw ParseError(lines[1].number, "trailing content after werner line");
        }
        try {
            return NoiseModel::werner(n, fidelity);
        } catch (const std::invalid_argument &e) {
            throw ParseError(lines[0].number, e.what());
        }
    }
    if (n > kMaxNoiseQubits) {
        throw ParseError(0, "noise table over " + std::to_string(n) + " qubits exceeds the limit");
    }
    std::vector<double> p(size_t{1} << n, 0.0);
    std::vector<bool> seen(p.size(), false);
    for (const auto &line : lines) {
        std::istringstream in(line.text);
        std::string bits;
        double prob = 0.0;
        std::string extra;
        if (!(in >> bits >> prob) || (in >> extra)) {
            throw ParseError(line.number, "expected 'bitstring probability'");
        }
        if (bits.size() != n || bits.find_first_not_of("01") != std::string::npos) {
            throw ParseError(line.number, "bitstring must have " + std::to_string(n) + " bits");
        }
        uint64_t index = 0;
        for (size_t i = 0; i < n; ++i) {
            if (bits[i] == '1') {
                index |= uint64_t{1} << i;
            }
        }
        if (seen[index]) {
            throw ParseError(line.number, "duplicate entry for " + bits);
        }
        seen[index] = true;
        p[index] = prob;
    }
    try {
        return NoiseModel(n, std::move(p));
    } catch (const std::invalid_argument &e) {
        throw ParseError(lines.back().number, e.what());
    }
}

// ---------------------------------------------------------------- SubspaceKey

namespace {

void require_small(size_t n) {
    if (n > 64) {
        throw std::invalid_argument("subspace ambient dimension must be <= 64");
    }
}

uint64_t column_mask(const BitMatrix &m, size_t c) {
    uint64_t mask = 0;
    for (size_t r = 0; r < m.rows(); ++r) {
        if (m.get(r, c)) {
            mask |= uint64_t{1} << r;
        }
    }
    return mask;
}

}  // namespace

SubspaceKey SubspaceKey::span(size_t n, std::span<const uint64_t> vectors) {
    require_small(n);
    SubspaceKey key(n);
    std::vector<uint64_t> rows(vectors.begin(), vectors.end());
    // Gauss-Jordan with the lowest set bit as the pivot column.
    size_t next = 0;
    for (size_t col = 0; col < n && next < rows.size(); ++col) {
        uint64_t bit = uint64_t{1} << col;
        size_t pivot = next;
        while (pivot < rows.size() && !(rows[pivot] & bit)) {
            ++pivot;
        }
        if (pivot == rows.size()) {
            continue;
        }
        std::swap(rows[pivot], rows[next]);
        for (size_t r = 0; r < rows.size(); ++r) {
            if (r != next && (rows[r] & bit)) {
                rows[r] ^= rows[next];
            }
        }
        ++next;
    }
    rows.resize(next);
    key.rows_ = std::move(rows);
    return key;
}

SubspaceKey SubspaceKey::from_columns(const BitMatrix &basis) {
    std::vector<uint64_t> vecs;
    vecs.reserve(basis.cols());
    for (size_t c = 0; c < basis.cols(); ++c) {
        vecs.push_back(column_mask(basis, c));
    }
    return span(basis.rows(), vecs);
}

bool SubspaceKey::contains(uint64_t v) const {
    for (uint64_t row : rows_) {
        uint64_t pivot = row & (~row + 1);
        if (v & pivot) {
            v ^= row;
        }
    }
    return v == 0;
}

BitMatrix SubspaceKey::basis_matrix() const {
    BitMatrix m(n_, rows_.size());
    for (size_t c = 0; c < rows_.size(); ++c) {
        for (size_t r = 0; r < n_; ++r) {
            if ((rows_[c] >> r) & 1u) {
                m.set(r, c, true);
            }
        }
    }
    return m;
}

SubspaceKey operator+(const SubspaceKey &a, const SubspaceKey &b) {
    if (a.n_ != b.n_) {
        throw std::invalid_argument("subspace sum: ambient dimension mismatch");
    }
    std::vector<uint64_t> vecs(a.rows_);
    vecs.insert(vecs.end(), b.rows_.begin(), b.rows_.end());
    return SubspaceKey::span(a.n_, vecs);
}

size_t SubspaceKeyHash::operator()(const SubspaceKey &k) const {
    size_t h = std::hash<size_t>{}(k.ambient_dim());
    for (uint64_t row : k.rows()) {
        h ^= std::hash<uint64_t>{}(row) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

// ---------------------------------------------------------------- entropies

double entropy_bits(std::span<const double> p) {
    double h = 0.0;
    for (double x : p) {
        if (x > 0.0) {
            h -= x * std::log2(x);
        }
    }
    // A lone mass of 1 - ulp would otherwise give -1e-16.
    return std::max(h, 0.0);
}

double entropy_H(const NoiseModel &nm) { return entropy_bits(nm.table()); }

double coset_entropy(const NoiseModel &nm, const SubspaceKey &g) {
    if (g.ambient_dim() != nm.num_qubits()) {
        throw std::invalid_argument("coset_entropy: subspace and noise model disagree on n");
    }
    auto rows = g.rows();
    std::vector<double> mass(size_t{1} << rows.size(), 0.0);
    for (uint64_t b = 0; b < nm.size(); ++b) {
        size_t label = 0;
        for (size_t j = 0; j < rows.size(); ++j) {
            label |= static_cast<size_t>(std::popcount(rows[j] & b) & 1) << j;
        }
        mass[label] += nm.p(b);
    }
    return entropy_bits(mass);
}

double CosetEntropyCache::operator()(const SubspaceKey &g) {
    {
        std::shared_lock lock(mu_);
        auto it = memo_.find(g);
        if (it != memo_.end()) {
            return it->second;
        }
    }
    double value = coset_entropy(nm_, g);
    std::unique_lock lock(mu_);
    memo_.emplace(g, value);
    return value;
}

size_t CosetEntropyCache::size() const {
    std::shared_lock lock(mu_);
    return memo_.size();
}

uint64_t gaussian_binomial2(size_t k, size_t d) {
    if (d > k) {
        return 0;
    }
    // Product of (2^k - 2^i) / (2^d - 2^i) for i < d, done with exact
    // integer division step by step over the running numerator/denominator.
    unsigned __int128 num = 1;
    unsigned __int128 den = 1;
    for (size_t i = 0; i < d; ++i) {
        num *= (static_cast<unsigned __int128>(1) << k) - (static_cast<unsigned __int128>(1) << i);
        den *= (static_cast<unsigned __int128>(1) << d) - (static_cast<unsigned __int128>(1) << i);
        unsigned __int128 a = num;
        unsigned __int128 b = den;
        while (b != 0) {
            unsigned __int128 t = a % b;
            a = b;
            b = t;
        }
        num /= a;
        den /= a;
    }
    return static_cast<uint64_t>(num / den);
}

std::vector<SubspaceKey> enumerate_subspaces(const MeasurableSubspace &v, size_t d) {
    size_t k = v.dim();
    size_t n = v.v_basis.rows();
    if (d > k) {
        throw std::invalid_argument("enumerate_subspaces: dimension exceeds dim V(M)");
    }
    require_small(n);
    std::vector<uint64_t> basis(k);
    for (size_t c = 0; c < k; ++c) {
        basis[c] = column_mask(v.v_basis, c);
    }
    auto embed = [&](uint64_t coeffs) {
        uint64_t out = 0;
        for (size_t j = 0; j < k; ++j) {
            if ((coeffs >> j) & 1u) {
                out ^= basis[j];
            }
        }
        return out;
    };

    // Every d-dim subspace of Z_2^k has a unique reduced echelon basis: pick
    // the pivot columns, then fill the non-pivot entries right of each pivot.
    std::vector<SubspaceKey> out;
    std::vector<size_t> pivots(d);
    std::iota(pivots.begin(), pivots.end(), 0);
    while (true) {
        std::vector<std::pair<size_t, size_t>> free_cells;
        uint64_t pivot_mask = 0;
        for (size_t p : pivots) {
            pivot_mask |= uint64_t{1} << p;
        }
        for (size_t r = 0; r < d; ++r) {
            for (size_t c = pivots[r] + 1; c < k; ++c) {
                if (!((pivot_mask >> c) & 1u)) {
                    free_cells.emplace_back(r, c);
                }
            }
        }
        if (free_cells.size() >= 63) {
            throw std::invalid_argument("enumerate_subspaces: too many subspaces to enumerate");
        }
        for (uint64_t fill = 0; fill < (uint64_t{1} << free_cells.size()); ++fill) {
            std::vector<uint64_t> coeff_rows(d);
            for (size_t r = 0; r < d; ++r) {
                coeff_rows[r] = uint64_t{1} << pivots[r];
            }
            for (size_t i = 0; i < free_cells.size(); ++i) {
                if ((fill >> i) & 1u) {
                    coeff_rows[free_cells[i].first] |= uint64_t{1} << free_cells[i].second;
                }
            }
            std::vector<uint64_t> vecs(d);
            for (size_t r = 0; r < d; ++r) {
                vecs[r] = embed(coeff_rows[r]);
            }
            out.push_back(SubspaceKey::span(n, vecs));
        }
        // Next combination of pivot columns.
        size_t i = d;
        while (i > 0 && pivots[i - 1] == k - d + i - 1) {
            --i;
        }
        if (i == 0) {
            break;
        }
        ++pivots[i - 1];
        for (size_t j = i; j < d; ++j) {
            pivots[j] = pivots[j - 1] + 1;
        }
    }
    return out;
}

double h_f(const NoiseModel &nm, std::span<const MeasurableSubspace> subspaces, const FVector &f,
           CosetEntropyCache *cache) {
    if (f.size() != subspaces.size()) {
        throw std::invalid_argument("h_f: f must have one entry per partition");
    }
    size_t n = nm.num_qubits();
    std::unordered_set<SubspaceKey, SubspaceKeyHash> sums{SubspaceKey(n)};
    for (size_t i = 0; i < subspaces.size(); ++i) {
        const auto &v = subspaces[i];
        if (v.v_basis.rows() != n) {
            throw std::invalid_argument("h_f: measurable subspace and noise model disagree on n");
        }
        if (f[i] < 0 || static_cast<size_t>(f[i]) > v.dim()) {
            throw std::invalid_argument("h_f: f(M) must lie in [0, n(M)]");
        }
        auto choices = enumerate_subspaces(v, v.dim() - static_cast<size_t>(f[i]));
        std::unordered_set<SubspaceKey, SubspaceKeyHash> next;
        for (const auto &s : sums) {
            for (const auto &g : choices) {
                next.insert(s + g);
            }
        }
        sums = std::move(next);
    }
    // Candidates of smaller dimension first so the zero floor is hit early.
    std::vector<const SubspaceKey *> order;
    order.reserve(sums.size());
    for (const auto &s : sums) {
        order.push_back(&s);
    }
    std::sort(order.begin(), order.end(), [](const SubspaceKey *a, const SubspaceKey *b) {
        if (a->dim() != b->dim()) {
            return a->dim() < b->dim();
        }
        return std::lexicographical_compare(a->rows().begin(), a->rows().end(), b->rows().begin(), b->rows().end());
    });
    double best = std::numeric_limits<double>::infinity();
    for (const SubspaceKey *s : order) {
        double c = cache ? (*cache)(*s) : coset_entropy(nm, *s);
        best = std::min(best, c);
        if (best <= 0.0) {
            break;
        }
    }
    return best;
}

double typical_count_exponent(const NoiseModel &nm, const SubspaceKey &g) {
    return entropy_H(nm) - coset_entropy(nm, g);
}

bool is_strongly_typical(std::span<const uint64_t> seq, const NoiseModel &nm, double eps) {
    if (!(eps > 0.0)) {
        throw std::invalid_argument("typicality tolerance must be positive");
    }
    std::vector<size_t> counts(nm.size(), 0);
    for (uint64_t b : seq) {
        if (b >= nm.size()) {
            throw std::invalid_argument("phase vector out of range for the noise model");
        }
        ++counts[b];
    }
    double k = static_cast<double>(seq.size());
    for (size_t a = 0; a < nm.size(); ++a) {
        double freq = seq.empty() ? 0.0 : static_cast<double>(counts[a]) / k;
        if (!(std::abs(freq - nm.p(a)) < eps)) {
            return false;
        }
    }
    return true;
}

}  // namespace stabbreed
