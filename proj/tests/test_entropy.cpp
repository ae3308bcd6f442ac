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

#include <cmath>
#include <random>
#include <thread>

#include "oracles.hpp"
#include "stabbreed/entropy.hpp"
#include "stabbreed/partition.hpp"

namespace stabbreed {
namespace {

// Closed form for the ring mixture when the summed subspace has dimension d.
double ring_table(double fidelity, size_t d) {
    double rest = 1.0 - fidelity;
    double head = fidelity + static_cast<double>((32 >> d) - 1) / 31.0 * rest;
    double tail = static_cast<double>(32 >> d) / 31.0 * rest;
    double h = -head * std::log2(head);
    if (tail > 0.0) {
        h -= static_cast<double>((1u << d) - 1) * tail * std::log2(tail);
    }
    return h;
}

std::vector<MeasurableSubspace> ring_subspaces() {
    StabilizerRep ring = graph_state_rep(ring5_adjacency());
    std::vector<MeasurableSubspace> out;
    for (const auto &m : ring5_partitions()) {
        out.push_back(measurable_subspace(ring, m));
    }
    return out;
}

TEST(NoiseModel, Validation) {
    EXPECT_THROW(NoiseModel(1, {0.5, 0.6}), std::invalid_argument);
    EXPECT_THROW(NoiseModel(1, {1.5, -0.5}), std::invalid_argument);
    EXPECT_THROW(NoiseModel(2, {1.0, 0.0}), std::invalid_argument);
    EXPECT_THROW(NoiseModel::werner(2, 1.2), std::invalid_argument);
    EXPECT_THROW(NoiseModel(13, std::vector<double>(1u << 13, 1.0 / 8192)), std::invalid_argument);
    auto w = NoiseModel::werner(5, 0.9);
    EXPECT_DOUBLE_EQ(w.p(0), 0.9);
    EXPECT_DOUBLE_EQ(w.p(17), 0.1 / 31);
}

TEST(NoiseModel, ParseFormats) {
    auto w = parse_noise_model("# mixture\nwerner 0.75\n", 3);
    EXPECT_DOUBLE_EQ(w.p(0), 0.75);
    auto t = parse_noise_model("00 0.5\n10 0.25\n01 0.25\n", 2);
    EXPECT_DOUBLE_EQ(t.p(1), 0.25);  // "10": bit 0 set
    EXPECT_DOUBLE_EQ(t.p(3), 0.0);
    try {
        parse_noise_model("00 0.5\n1x 0.5\n", 2);
        FAIL();
    } catch (const ParseError &e) {
        EXPECT_EQ(e.line(), 2u);
    }
    EXPECT_THROW(parse_noise_model("00 0.5\n00 0.5\n", 2), ParseError);
    EXPECT_THROW(parse_noise_model("00 0.5\n", 2), ParseError);
    EXPECT_THROW(parse_noise_model("werner\n", 2), ParseError);
}

TEST(Entropy, PointUniformAndMixture) {
    EXPECT_DOUBLE_EQ(entropy_H(NoiseModel::werner(3, 1.0)), 0.0);
    EXPECT_NEAR(entropy_H(NoiseModel(3, std::vector<double>(8, 0.125))), 3.0, 1e-12);
    auto w = NoiseModel::werner(5, 0.9);
    double direct = 0.0;
    for (uint64_t b = 0; b < 32; ++b) {
        direct -= w.p(b) * std::log2(w.p(b));
    }
    EXPECT_NEAR(entropy_H(w), direct, 1e-12);
    EXPECT_NEAR(entropy_H(w), ring_table(0.9, 5), 1e-12);
}

TEST(SubspaceKey, Canonical) {
    std::vector<uint64_t> a{0b011, 0b110};
    std::vector<uint64_t> b{0b101, 0b011, 0b110};
    EXPECT_EQ(SubspaceKey::span(3, a), SubspaceKey::span(3, b));
    EXPECT_EQ(SubspaceKey::span(3, a).dim(), 2u);
    EXPECT_TRUE(SubspaceKey::span(3, a).contains(0b101));
    EXPECT_FALSE(SubspaceKey::span(3, a).contains(0b100));
    SubspaceKey sum = SubspaceKey::span(3, std::vector<uint64_t>{1}) + SubspaceKey::span(3, std::vector<uint64_t>{2});
    EXPECT_EQ(sum, SubspaceKey::span(3, std::vector<uint64_t>{3, 1}));
    EXPECT_EQ(SubspaceKey::from_columns(sum.basis_matrix()), sum);
    SubspaceKeyHash h;
    EXPECT_EQ(h(SubspaceKey::span(3, a)), h(SubspaceKey::span(3, b)));
}

TEST(CosetEntropy, EdgesAndMatchesDirectLabels) {
    auto w = NoiseModel::werner(5, 0.8);
    EXPECT_DOUBLE_EQ(coset_entropy(w, SubspaceKey(5)), 0.0);
    std::vector<uint64_t> all{1, 2, 4, 8, 16};
    EXPECT_NEAR(coset_entropy(w, SubspaceKey::span(5, all)), entropy_H(w), 1e-12);
    std::mt19937_64 rng(4);
    std::vector<double> p(16);
    for (auto &x : p) {
        x = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    }
    double total = 0;
    for (double x : p) {
        total += x;
    }
    for (auto &x : p) {
        x /= total;
    }
    NoiseModel nm(4, p);
    for (int t = 0; t < 50; ++t) {
        std::vector<uint64_t> gens{rng() & 15, rng() & 15};
        EXPECT_NEAR(coset_entropy(nm, SubspaceKey::span(4, gens)),
                    oracle::coset_entropy(nm, oracle::closure(gens)), 1e-12);
    }
}

TEST(CosetEntropy, RingDimOneRow) {
    std::vector<uint64_t> e1{1};
    for (double f : {0.6, 0.9, 0.99}) {
        EXPECT_NEAR(coset_entropy(NoiseModel::werner(5, f), SubspaceKey::span(5, e1)), ring_table(f, 1), 1e-12);
    }
}

TEST(CosetEntropy, BoundsAndMonotone) {
    auto w = NoiseModel::werner(4, 0.7);
    double h = entropy_H(w);
    std::mt19937_64 rng(8);
    for (int t = 0; t < 100; ++t) {
        std::vector<uint64_t> g{rng() & 15};
        std::vector<uint64_t> big{g[0], rng() & 15, rng() & 15};
        auto small = SubspaceKey::span(4, g);
        auto large = SubspaceKey::span(4, big);
        double cs = coset_entropy(w, small);
        double cl = coset_entropy(w, large);
        EXPECT_LE(cs, cl + 1e-12);
        EXPECT_LE(cl, std::min(static_cast<double>(large.dim()), h) + 1e-12);
        EXPECT_GE(cs, 0.0);
    }
}

TEST(CosetEntropyCache, ConcurrentLookups) {
    auto w = NoiseModel::werner(5, 0.85);
    CosetEntropyCache cache(w);
    std::vector<std::jthread> workers;
    for (int t = 0; t < 4; ++t) {
        workers.emplace_back([&] {
            for (uint64_t v = 1; v < 32; ++v) {
                std::vector<uint64_t> g{v};
                EXPECT_DOUBLE_EQ(cache(SubspaceKey::span(5, g)), coset_entropy(w, SubspaceKey::span(5, g)));
            }
        });
    }
    workers.clear();
    EXPECT_EQ(cache.size(), 31u);
}

TEST(EnumerateSubspaces, GaussianBinomialCounts) {
    StabilizerRep plus = graph_state_rep(BitMatrix(4, 4));
    auto v = measurable_subspace(plus, MeasurementPartition::parse("xxxx"));
    for (size_t d = 0; d <= 4; ++d) {
        auto subs = enumerate_subspaces(v, d);
        EXPECT_EQ(subs.size(), gaussian_binomial2(4, d));
        EXPECT_EQ(subs.size(), oracle::all_subspaces({1, 2, 4, 8}, d).size());
        for (const auto &s : subs) {
            EXPECT_EQ(s.dim(), d);
        }
    }
    EXPECT_EQ(gaussian_binomial2(2, 1), 3u);
    EXPECT_EQ(gaussian_binomial2(4, 2), 35u);
    EXPECT_EQ(gaussian_binomial2(6, 3), 1395u);
    EXPECT_THROW(enumerate_subspaces(v, 5), std::invalid_argument);
}

TEST(HF, RingTableAllRows) {
    auto subs = ring_subspaces();
    // f vectors whose best summed subspace has dimension 0..5.
    const std::vector<FVector> fs{{2, 2, 2, 2, 2}, {1, 2, 2, 2, 2}, {0, 2, 2, 2, 2},
                                  {0, 2, 1, 2, 2}, {0, 2, 0, 2, 2}, {0, 0, 0, 0, 0}};
    for (double fid : {0.7, 0.8, 0.9, 0.95, 0.99}) {
        auto w = NoiseModel::werner(5, fid);
        CosetEntropyCache cache(w);
        for (size_t d = 0; d < fs.size(); ++d) {
            EXPECT_NEAR(h_f(w, subs, fs[d], &cache), ring_table(fid, d), 1e-9) << "F=" << fid << " d=" << d;
        }
    }
}

TEST(HF, SingleUnitDeficitIsDimOne) {
    auto subs = ring_subspaces();
    auto w = NoiseModel::werner(5, 0.9);
    for (size_t i = 0; i < 5; ++i) {
        FVector f(5, 2);
        f[i] = 1;
        EXPECT_NEAR(h_f(w, subs, f), ring_table(0.9, 1), 1e-12);
    }
}

TEST(HF, MatchesBruteForce) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 30; ++trial) {
        size_t n = 3 + trial % 2;
        BitMatrix theta(n, n);
        for (size_t i = 0; i < n; ++i) {
            for (size_t j = i + 1; j < n; ++j) {
                bool e = rng() & 1u;
                theta.set(i, j, e);
                theta.set(j, i, e);
            }
        }
        StabilizerRep s = graph_state_rep(theta);
        auto parts = enumerate_partitions(n);
        std::vector<MeasurableSubspace> subs;
        for (int i = 0; i < 3; ++i) {
            subs.push_back(measurable_subspace(s, parts[rng() % parts.size()]));
        }
        std::vector<double> p(size_t{1} << n);
        double total = 0;
        for (auto &x : p) {
            x = std::uniform_real_distribution<double>(0.01, 1.0)(rng);
            total += x;
        }
        for (auto &x : p) {
            x /= total;
        }
        NoiseModel nm(n, p);
        FVector f;
        std::vector<size_t> dims;
        std::vector<std::vector<uint64_t>> gens;
        for (const auto &sub : subs) {
            int fi = static_cast<int>(rng() % (sub.dim() + 1));
            f.push_back(fi);
            dims.push_back(sub.dim() - static_cast<size_t>(fi));
            gens.push_back(oracle::column_masks(sub.v_basis));
        }
        EXPECT_NEAR(h_f(nm, subs, f), oracle::h_f(nm, gens, dims), 1e-12);
    }
}

TEST(HF, EdgeCasesAndErrors) {
    auto subs = ring_subspaces();
    auto w = NoiseModel::werner(5, 0.8);
    EXPECT_DOUBLE_EQ(h_f(w, subs, FVector(5, 2)), 0.0);
    std::vector<uint64_t> all{1, 2, 4, 8, 16};
    EXPECT_NEAR(h_f(w, subs, FVector(5, 0)), coset_entropy(w, SubspaceKey::span(5, all)), 1e-12);
    EXPECT_THROW(h_f(w, subs, FVector(5, 3)), std::invalid_argument);
    EXPECT_THROW(h_f(w, subs, FVector(4, 0)), std::invalid_argument);
    // Monotone nonincreasing in f.
    EXPECT_GE(h_f(w, subs, {0, 2, 1, 2, 2}), h_f(w, subs, {1, 2, 1, 2, 2}) - 1e-12);
}

TEST(TypicalCount, ExponentEdges) {
    auto w = NoiseModel::werner(3, 0.8);
    std::vector<uint64_t> all{1, 2, 4};
    EXPECT_NEAR(typical_count_exponent(w, SubspaceKey::span(3, all)), 0.0, 1e-12);
    EXPECT_NEAR(typical_count_exponent(w, SubspaceKey(3)), entropy_H(w), 1e-12);
}

TEST(TypicalCount, LiteralCountApproachesExponent) {
    // Dyadic table so exact types exist; the gap to H - C shrinks with k.
    NoiseModel nm(2, {0.5, 0.25, 0.125, 0.125});
    std::vector<uint64_t> g{1};
    double predicted = typical_count_exponent(nm, SubspaceKey::span(2, g));
    double previous_gap = INFINITY;
    for (size_t k : {8u, 16u}) {
        // u of exact type k p.
        std::vector<uint64_t> u;
        u.insert(u.end(), k / 2, 0);
        u.insert(u.end(), k / 4, 1);
        u.insert(u.end(), k / 8, 2);
        u.insert(u.end(), k / 8, 3);
        uint64_t count = oracle::count_matching_literal(nm, g, u, 0.05);
        double gap = predicted - std::log2(static_cast<double>(count)) / static_cast<double>(k);
        EXPECT_GT(gap, 0.0);
        EXPECT_LT(gap, previous_gap);
        previous_gap = gap;
    }
}

TEST(Typicality, Definition) {
    NoiseModel nm(1, {0.75, 0.25});
    std::vector<uint64_t> exact{0, 0, 0, 1};
    EXPECT_TRUE(is_strongly_typical(exact, nm, 1e-9));
    std::vector<uint64_t> off{0, 0, 0, 0};
    EXPECT_FALSE(is_strongly_typical(off, nm, 0.2));
    EXPECT_TRUE(is_strongly_typical(off, nm, 0.3));
    auto w = NoiseModel::werner(2, 0.99);
    std::vector<uint64_t> modal(20, 0);
    EXPECT_TRUE(is_strongly_typical(modal, w, 0.05));
    EXPECT_THROW(is_strongly_typical(exact, nm, 0.0), std::invalid_argument);
}

}  // namespace
}  // namespace stabbreed
