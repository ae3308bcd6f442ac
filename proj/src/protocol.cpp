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

#include "stabbreed/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace stabbreed {

namespace {

// Runs body(i) for i in [0, count) on up to hardware_concurrency threads.
// Each index writes only its own output slot, so results do not depend on
// scheduling.
template <typename Body>
void parallel_for(size_t count, Body body) {
    size_t workers = std::min<size_t>(std::max(1u, std::thread::hardware_concurrency()), count);
    if (workers <= 1) {
        for (size_t i = 0; i < count; ++i) {
            body(i);
        }
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        for (size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (size_t i = w; i < count; i += workers) {
                        body(i);
                    }
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

}  // namespace

uint64_t split_seed(uint64_t seed, uint64_t index) {
    // splitmix64 over (seed, index)
    uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::vector<uint64_t> sample_ensemble(const NoiseModel &nm, size_t k, std::mt19937_64 &rng) {
    if (k == 0) {
        throw std::invalid_argument("sample_ensemble: need at least one copy");
    }
    std::discrete_distribution<uint64_t> dist(nm.table().begin(), nm.table().end());
    std::vector<uint64_t> out(k);
    for (auto &b : out) {
        b = dist(rng);
    }
    return out;
}

std::vector<uint64_t> sample_ensemble(const NoiseModel &nm, size_t k, uint64_t seed) {
    std::mt19937_64 rng(seed);
    return sample_ensemble(nm, k, rng);
}

BitMatrix phase_matrix(std::span<const uint64_t> seq, size_t n) {
    BitMatrix m(n, seq.size());
    for (size_t j = 0; j < seq.size(); ++j) {
        for (size_t i = 0; i < n; ++i) {
            if ((seq[j] >> i) & 1u) {
                m.set(i, j, true);
            }
        }
    }
    return m;
}

bool measurement_outcome(const BitVector &v, const BitVector &column) { return v.dot(column); }

bool measurement_outcome(const MeasurableSubspace &sub, const BitVector &v, const BitVector &column) {
    if (!solve(sub.v_basis, v)) {
        throw std::logic_error("measurement_outcome: v is not in V(M) for partition " + sub.partition.str());
    }
    return v.dot(column);
}

BitVector measurement_outcomes(const MeasurableSubspace &sub, const BitVector &column) {
    return matvec(sub.v_basis.transpose(), column);
}

size_t revealed_rank(const MeasurableSubspace &sub, const BitMatrix &delta_b) {
    return rank(matmul(sub.v_basis.transpose(), delta_b));
}

size_t survival_exponent(const Allocation &alloc, const BitMatrix &delta_b) {
    size_t total = 0;
    for (const auto &entry : alloc) {
        total += entry.count * revealed_rank(entry.subspace, delta_b);
    }
    return total;
}

double survival_probability_mc(const StabilizerRep &state, const BitMatrix &delta_b, const Allocation &alloc,
                               size_t trials, uint64_t seed) {
    if (trials == 0) {
        throw std::invalid_argument("survival_probability_mc: need at least one trial");
    }
    if (delta_b.is_zero()) {
        throw std::invalid_argument("survival_probability_mc: Δb̃ must be nonzero");
    }
    if (delta_b.rows() != state.num_qubits()) {
        throw std::invalid_argument("survival_probability_mc: Δb̃ must have one row per qubit");
    }
    const size_t k = delta_b.cols();
    std::vector<BitMatrix> revealed;
    std::vector<size_t> counts;
    for (const auto &entry : alloc) {
        if (entry.subspace.v_basis.rows() != state.num_qubits()) {
            throw std::invalid_argument("survival_probability_mc: allocation and state disagree on n");
        }
        revealed.push_back(matmul(entry.subspace.v_basis.transpose(), delta_b));
        counts.push_back(entry.count);
    }
    std::vector<char> alive(trials, 1);
    parallel_for(trials, [&](size_t t) {
        std::mt19937_64 rng(split_seed(seed, t));
        std::bernoulli_distribution coin(0.5);
        for (size_t e = 0; e < revealed.size() && alive[t]; ++e) {
            for (size_t c = 0; c < counts[e] && alive[t]; ++c) {
                BitVector q(k);
                for (size_t i = 0; i < k; ++i) {
                    q.set(i, coin(rng));
                }
                alive[t] = matvec(revealed[e], q).is_zero();
            }
        }
    });
    size_t survived = static_cast<size_t>(std::count(alive.begin(), alive.end(), 1));
    return static_cast<double>(survived) / static_cast<double>(trials);
}

std::vector<size_t> round_allocation(std::span<const double> m, size_t k) {
    double total = std::accumulate(m.begin(), m.end(), 0.0) * static_cast<double>(k);
    auto target = static_cast<size_t>(std::llround(total));
    std::vector<size_t> counts(m.size());
    std::vector<std::pair<double, size_t>> remainders;
    size_t assigned = 0;
    for (size_t i = 0; i < m.size(); ++i) {
        if (m[i] < 0.0) {
            throw std::invalid_argument("round_allocation: fractions must be nonnegative");
        }
        double exact = m[i] * static_cast<double>(k);
        counts[i] = static_cast<size_t>(std::floor(exact));
        assigned += counts[i];
        remainders.emplace_back(exact - std::floor(exact), i);
    }
    std::stable_sort(remainders.begin(), remainders.end(),
                     [](const auto &a, const auto &b) { return a.first > b.first; });
    for (size_t j = 0; assigned < target && j < remainders.size(); ++j, ++assigned) {
        ++counts[remainders[j].second];
    }
    return counts;
}

namespace {

// Rejection-samples a strongly typical sequence. At small k the typical set
// can be empty (frequencies move in steps of 1/k), in which case the last
// plain draw is returned.
std::vector<uint64_t> sample_typical(const NoiseModel &nm, size_t k, double eps, std::mt19937_64 &rng) {
    std::vector<uint64_t> seq;
    for (int attempt = 0; attempt < 1000; ++attempt) {
        seq = sample_ensemble(nm, k, rng);
        if (is_strongly_typical(seq, nm, eps)) {
            break;
        }
    }
    return seq;
}

}  // namespace

RunResult run_protocol(const ProtocolConfig &cfg) {
    const size_t n = cfg.state.num_qubits();
    const size_t k = cfg.k;
    if (k == 0) {
        throw std::invalid_argument("run_protocol: need at least one noisy copy");
    }
    if (cfg.noise.num_qubits() != n) {
        throw std::invalid_argument("run_protocol: noise model and state disagree on n");
    }
    if (cfg.allocation.size() != cfg.partitions.size()) {
        throw std::invalid_argument("run_protocol: one allocation count per partition required");
    }
    const size_t measurements = std::accumulate(cfg.allocation.begin(), cfg.allocation.end(), size_t{0});
    const auto expected = static_cast<size_t>(std::llround((1.0 - cfg.gamma) * static_cast<double>(k)));
    if (cfg.gamma < 0.0 || cfg.gamma > 1.0 || measurements != expected) {
        throw std::invalid_argument("run_protocol: allocation total " + std::to_string(measurements) +
                                    " is inconsistent with (1 - gamma) k = " + std::to_string(expected));
    }
    for (const auto &delta : cfg.explicit_deltas) {
        if (delta.rows() != n || delta.cols() != k) {
            throw std::invalid_argument("run_protocol: explicit Δb̃ must be n x k");
        }
    }

    std::mt19937_64 rng(cfg.seed);
    RunResult res;
    res.true_u = sample_ensemble(cfg.noise, k, rng);
    const BitMatrix u = phase_matrix(res.true_u, n);

    std::vector<BitMatrix> candidates;
    for (size_t s = 0; s < cfg.sampled_candidates; ++s) {
        BitMatrix b = phase_matrix(sample_typical(cfg.noise, k, cfg.eps, rng), n);
        if (!(b == u)) {
            candidates.push_back(b + u);
        }
    }
    const size_t sampled = candidates.size();
    for (const auto &delta : cfg.explicit_deltas) {
        candidates.push_back(delta);
    }
    res.candidates_tracked = candidates.size() + 1;

    BitMatrix q_used(k, 0);
    if (measurements > 0) {
        BitMatrix q = random_full_rank(k, measurements, rng);
        BreedingMatrix bm = build_breeding_matrix(q);
        res.column_repairs = bm.column_repairs;
        q_used = bm.q_used;
        const size_t kbar = bm.a.rows();

        // Party-major phases of the noisy copies followed by zeroed ancillas.
        BitVector bbar(n * kbar);
        for (size_t i = 0; i < n; ++i) {
            for (size_t j = 0; j < k; ++j) {
                bbar.set(i * kbar + j, u.get(i, j));
            }
        }
        BitVector transformed = breeding_transform(bbar, bm.a, n);

        BitMatrix lhs = matmul(kron(BitMatrix::identity(2 * n), bm.a), copies_rep(cfg.state.s(), kbar));
        if (!(matmul(lhs, kron(BitMatrix::identity(n), bm.a.transpose())) == copies_rep(cfg.state.s(), kbar))) {
            throw std::logic_error("run_protocol: local Cliffords do not preserve S ⊗ I");
        }

        for (size_t p = 0; p < cfg.partitions.size(); ++p) {
            res.measurement_partition.insert(res.measurement_partition.end(), cfg.allocation[p], p);
        }
        // Measurements added by a repair use the most frequent partition.
        size_t busiest = static_cast<size_t>(
            std::max_element(cfg.allocation.begin(), cfg.allocation.end()) - cfg.allocation.begin());
        res.measurement_partition.resize(q_used.cols(), busiest);

        for (size_t j = 0; j < q_used.cols(); ++j) {
            BitVector ancilla(n);
            for (size_t i = 0; i < n; ++i) {
                ancilla.set(i, transformed.get(i * kbar + k + j));
            }
            if (!(ancilla == matvec(u, q_used.col(j)))) {
                throw std::logic_error("run_protocol: ancilla phase differs from Ũ q");
            }
            res.outcomes.push_back(measurement_outcomes(cfg.partitions[res.measurement_partition[j]], ancilla));
        }
    }

    std::vector<bool> alive(candidates.size(), true);
    size_t remaining = candidates.size() + 1;
    for (size_t j = 0; j < q_used.cols(); ++j) {
        const auto &sub = cfg.partitions[res.measurement_partition[j]];
        BitVector q = q_used.col(j);
        if (!(measurement_outcomes(sub, matvec(u, q)) == res.outcomes[j])) {
            throw std::logic_error("run_protocol: true phase vector contradicts an outcome");
        }
        for (size_t c = 0; c < candidates.size(); ++c) {
            if (alive[c] && !measurement_outcomes(sub, matvec(candidates[c], q)).is_zero()) {
                alive[c] = false;
                --remaining;
            }
        }
        res.eliminated_history.push_back(remaining);
    }
    res.candidates_remaining = remaining;
    res.delta_survived.assign(alive.begin() + static_cast<std::ptrdiff_t>(sampled), alive.end());
    return res;
}

std::vector<SurvivalRow> survival_report(const ProtocolConfig &cfg, size_t runs) {
    if (runs == 0) {
        throw std::invalid_argument("survival_report: need at least one run");
    }
    Allocation alloc;
    for (size_t p = 0; p < cfg.partitions.size(); ++p) {
        alloc.push_back({cfg.partitions[p], cfg.allocation[p]});
    }
    std::vector<SurvivalRow> rows(cfg.explicit_deltas.size());
    for (size_t d = 0; d < rows.size(); ++d) {
        rows[d].exponent = survival_exponent(alloc, cfg.explicit_deltas[d]);
        rows[d].predicted = std::exp2(-static_cast<double>(rows[d].exponent));
        rows[d].runs = runs;
    }
    std::vector<std::vector<bool>> per_run(runs);
    parallel_for(runs, [&](size_t r) {
        ProtocolConfig run_cfg = cfg;
        run_cfg.seed = split_seed(cfg.seed, r);
        per_run[r] = run_protocol(run_cfg).delta_survived;
    });
    std::vector<size_t> survived(rows.size(), 0);
    for (const auto &res : per_run) {
        for (size_t d = 0; d < rows.size(); ++d) {
            survived[d] += res[d];
        }
    }
    for (size_t d = 0; d < rows.size(); ++d) {
        rows[d].empirical = static_cast<double>(survived[d]) / static_cast<double>(runs);
    }
    return rows;
}

std::vector<BitMatrix> sample_deltas(const NoiseModel &nm, size_t k, size_t count, uint64_t seed) {
    std::mt19937_64 rng(seed);
    const size_t n = nm.num_qubits();
    std::vector<BitMatrix> out;
    while (out.size() < count) {
        BitMatrix delta(n, k);
        for (int attempt = 0; attempt < 100 && delta.is_zero(); ++attempt) {
            delta = phase_matrix(sample_ensemble(nm, k, rng), n) + phase_matrix(sample_ensemble(nm, k, rng), n);
        }
        if (delta.is_zero()) {
            std::uniform_int_distribution<size_t> pick_row(0, n - 1);
            std::uniform_int_distribution<size_t> pick_col(0, k - 1);
            delta.set(pick_row(rng), pick_col(rng), true);
        }
        out.push_back(std::move(delta));
    }
    return out;
}

}  // namespace stabbreed
