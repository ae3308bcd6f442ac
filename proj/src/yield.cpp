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

#include "stabbreed/yield.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>

namespace stabbreed {

namespace {

constexpr double kRhsFloor = 1e-14;
constexpr double kPivotTol = 1e-12;
constexpr double kFeasTol = 1e-9;

}  // namespace

std::vector<FVector> enumerate_f(std::span<const MeasurableSubspace> partitions) {
    if (partitions.empty()) {
        throw std::invalid_argument("enumerate_f: need at least one partition");
    }
    size_t total = 1;
    for (const auto &m : partitions) {
        total *= m.dim() + 1;
        if (total > kMaxFVectors) {
            throw std::invalid_argument("enumerate_f: more than " + std::to_string(kMaxFVectors) +
                                        " f vectors for " + std::to_string(partitions.size()) +
                                        " partitions; pass fewer partitions");
        }
    }
    std::vector<FVector> out;
    FVector f(partitions.size(), 0);
    while (true) {
        size_t i = 0;
        while (i < f.size()) {
            if (static_cast<size_t>(f[i]) < partitions[i].dim()) {
                ++f[i];
                break;
            }
            f[i] = 0;
            ++i;
        }
        if (i == f.size()) {
            break;
        }
        out.push_back(f);
    }
    return out;
}

YieldProblem build_problem(const NoiseModel &nm, std::vector<MeasurableSubspace> partitions) {
    YieldProblem prob;
    prob.entropy = entropy_H(nm);
    CosetEntropyCache cache(nm);
    for (auto &f : enumerate_f(partitions)) {
        double hf = h_f(nm, partitions, f, &cache);
        prob.constraints.push_back({std::move(f), hf, std::max(0.0, prob.entropy - hf)});
    }
    prob.partitions = std::move(partitions);
    return prob;
}

CoveringLp prune_covering(const CoveringLp &lp) {
    std::vector<size_t> live;
    for (size_t i = 0; i < lp.rows.size(); ++i) {
        if (lp.rhs[i] > kRhsFloor) {
            live.push_back(i);
        }
    }
    auto implies = [&](size_t a, size_t b) {
        // Row a implies row b when a <= b componentwise and rhs_a >= rhs_b.
        for (size_t j = 0; j < lp.num_vars; ++j) {
            if (lp.rows[a][j] > lp.rows[b][j]) {
                return false;
            }
        }
        return lp.rhs[a] >= lp.rhs[b];
    };
    CoveringLp out;
    out.num_vars = lp.num_vars;
    for (size_t b : live) {
        bool redundant = false;
        for (size_t a : live) {
            if (a == b || !implies(a, b)) {
                continue;
            }
            // Of two mutually implying rows keep the first.
            if (!implies(b, a) || a < b) {
                redundant = true;
                break;
            }
        }
        if (!redundant) {
            out.rows.push_back(lp.rows[b]);
            out.rhs.push_back(lp.rhs[b]);
        }
    }
    return out;
}

std::vector<double> solve_covering_simplex(const CoveringLp &lp) {
    const size_t m = lp.rows.size();
    const size_t n = lp.num_vars;
    if (m == 0) {
        return std::vector<double>(n, 0.0);
    }
    // Dual tableau: one row per primal variable j with sum_i A_ij y_i + s_j = 1.
    const size_t cols = m + n;
    std::vector<std::vector<double>> t(n, std::vector<double>(cols + 1, 0.0));
    std::vector<size_t> basis(n);
    for (size_t j = 0; j < n; ++j) {
        for (size_t i = 0; i < m; ++i) {
            t[j][i] = lp.rows[i][j];
        }
        t[j][m + j] = 1.0;
        t[j][cols] = 1.0;
        basis[j] = m + j;
    }
    std::vector<double> obj(cols + 1, 0.0);
    for (size_t i = 0; i < m; ++i) {
        obj[i] = -lp.rhs[i];
    }
    for (size_t iter = 0;; ++iter) {
        if (iter > 100000) {
            throw std::runtime_error("simplex: iteration limit reached");
        }
        size_t enter = cols;
        for (size_t c = 0; c < cols; ++c) {
            if (obj[c] < -kPivotTol) {
                enter = c;
                break;
            }
        }
        if (enter == cols) {
            break;
        }
        size_t leave = n;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (size_t r = 0; r < n; ++r) {
            if (t[r][enter] > kPivotTol) {
                double ratio = t[r][cols] / t[r][enter];
                if (ratio < best_ratio - kPivotTol ||
                    (std::abs(ratio - best_ratio) <= kPivotTol && leave < n && basis[r] < basis[leave])) {
                    best_ratio = ratio;
                    leave = r;
                }
            }
        }
        if (leave == n) {
            throw std::runtime_error("simplex: covering LP is infeasible (dual unbounded)");
        }
        double piv = t[leave][enter];
        for (double &x : t[leave]) {
            x /= piv;
        }
        for (size_t r = 0; r < n; ++r) {
            if (r != leave && t[r][enter] != 0.0) {
                double factor = t[r][enter];
                for (size_t c = 0; c <= cols; ++c) {
                    t[r][c] -= factor * t[leave][c];
                }
            }
        }
        double factor = obj[enter];
        for (size_t c = 0; c <= cols; ++c) {
            obj[c] -= factor * t[leave][c];
        }
        basis[leave] = enter;
    }
    // Primal values are the reduced costs of the dual slack columns.
    std::vector<double> x(n);
    for (size_t j = 0; j < n; ++j) {
        x[j] = std::max(0.0, obj[m + j]);
    }
    return x;
}

namespace {

std::optional<std::vector<double>> solve_dense(std::vector<std::vector<double>> a, std::vector<double> b) {
    size_t n = b.size();
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        for (size_t r = c + 1; r < n; ++r) {
            if (std::abs(a[r][c]) > std::abs(a[piv][c])) {
                piv = r;
            }
        }
        if (std::abs(a[piv][c]) < 1e-12) {
            return std::nullopt;
        }
        std::swap(a[piv], a[c]);
        std::swap(b[piv], b[c]);
        for (size_t r = 0; r < n; ++r) {
            if (r != c && a[r][c] != 0.0) {
                double factor = a[r][c] / a[c][c];
                for (size_t k = c; k < n; ++k) {
                    a[r][k] -= factor * a[c][k];
                }
                b[r] -= factor * b[c];
            }
        }
    }
    for (size_t r = 0; r < n; ++r) {
        b[r] /= a[r][r];
    }
    return b;
}

double combinations(size_t n, size_t k) {
    double c = 1.0;
    for (size_t i = 0; i < k; ++i) {
        c = c * static_cast<double>(n - i) / static_cast<double>(i + 1);
    }
    return c;
}

}  // namespace

std::optional<std::vector<double>> solve_covering_vertices(const CoveringLp &lp, size_t max_combinations) {
    const size_t n = lp.num_vars;
    if (lp.rows.empty()) {
        return std::vector<double>(n, 0.0);
    }
    // Candidate tight sets: the constraint rows followed by x_j >= 0.
    std::vector<std::vector<double>> rows = lp.rows;
    std::vector<double> rhs = lp.rhs;
    for (size_t j = 0; j < n; ++j) {
        std::vector<double> e(n, 0.0);
        e[j] = 1.0;
        rows.push_back(std::move(e));
        rhs.push_back(0.0);
    }
    const size_t total = rows.size();
    if (combinations(total, n) > static_cast<double>(max_combinations)) {
        return std::nullopt;
    }
    std::optional<std::vector<double>> best;
    double best_obj = std::numeric_limits<double>::infinity();
    std::vector<size_t> pick(n);
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
        std::vector<std::vector<double>> a(n);
        std::vector<double> b(n);
        for (size_t i = 0; i < n; ++i) {
            a[i] = rows[pick[i]];
            b[i] = rhs[pick[i]];
        }
        if (auto x = solve_dense(std::move(a), std::move(b))) {
            bool feasible = true;
            for (size_t i = 0; i < total && feasible; ++i) {
                double lhs = std::inner_product(rows[i].begin(), rows[i].end(), x->begin(), 0.0);
                feasible = lhs >= rhs[i] - kFeasTol;
            }
            if (feasible) {
                double obj = std::accumulate(x->begin(), x->end(), 0.0);
                if (obj < best_obj) {
                    best_obj = obj;
                    best = std::move(x);
                }
            }
        }
        size_t i = n;
        while (i > 0 && pick[i - 1] == total - n + i - 1) {
            --i;
        }
        if (i == 0) {
            break;
        }
        ++pick[i - 1];
        for (size_t j = i; j < n; ++j) {
            pick[j] = pick[j - 1] + 1;
        }
    }
    if (!best) {
        throw std::runtime_error("vertex enumeration: covering LP is infeasible");
    }
    for (double &v : *best) {
        v = std::max(0.0, v);
    }
    return best;
}

YieldSolution solve_lp(const YieldProblem &prob) {
    const size_t nvars = prob.partitions.size();
    CoveringLp lp;
    lp.num_vars = nvars;
    for (const auto &c : prob.constraints) {
        if (!std::isfinite(c.rhs)) {
            throw std::invalid_argument("solve_lp: constraint rhs must be finite");
        }
        lp.rows.emplace_back(c.f.begin(), c.f.end());
        lp.rhs.push_back(c.rhs);
    }
    CoveringLp pruned = prune_covering(lp);

    std::vector<double> m;
    if (nvars <= 8) {
        if (auto exact = solve_covering_vertices(pruned, 200000)) {
            m = std::move(*exact);
        }
    }
    if (m.empty()) {
        m = solve_covering_simplex(pruned);
    }

    YieldSolution sol;
    sol.m = m;
    sol.sum_m = std::accumulate(m.begin(), m.end(), 0.0);
    double raw = 1.0 - sol.sum_m;
    sol.clamped = raw < 0.0;
    sol.gamma = std::clamp(raw, 0.0, 1.0);
    for (size_t i = 0; i < prob.constraints.size(); ++i) {
        const auto &c = prob.constraints[i];
        if (c.rhs <= kRhsFloor) {
            continue;
        }
        double lhs = 0.0;
        for (size_t j = 0; j < nvars; ++j) {
            lhs += m[j] * c.f[j];
        }
        if (std::abs(lhs - c.rhs) <= kFeasTol) {
            sol.binding.push_back(i);
        }
    }
    return sol;
}

std::vector<YieldCurvePoint> yield_curve(size_t n, std::span<const MeasurableSubspace> partitions,
                                         std::span<const double> fidelities, size_t threads) {
    if (fidelities.empty()) {
        throw std::invalid_argument("yield_curve: empty fidelity grid");
    }
    std::vector<YieldCurvePoint> out(fidelities.size());
    std::vector<MeasurableSubspace> parts(partitions.begin(), partitions.end());
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (size_t i = next++; i < fidelities.size(); i = next++) {
            NoiseModel nm = NoiseModel::werner(n, fidelities[i]);
            YieldProblem prob = build_problem(nm, parts);
            YieldCurvePoint &pt = out[i];
            pt.fidelity = fidelities[i];
            pt.entropy = prob.entropy;
            pt.solution = solve_lp(prob);
            for (size_t b : pt.solution.binding) {
                pt.binding_f.push_back(prob.constraints[b].f);
            }
        }
    };
    if (threads == 0) {
        threads = std::max<size_t>(1, std::thread::hardware_concurrency());
    }
    threads = std::min(threads, fidelities.size());
    if (threads <= 1) {
        worker();
        return out;
    }
    // Errors from workers are rethrown after all threads join.
    std::vector<std::exception_ptr> errors(threads);
    {
        std::vector<std::jthread> pool;
        for (size_t t = 0; t < threads; ++t) {
            pool.emplace_back([&, t]() {
                try {
                    worker();
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            });
        }
    }
    for (auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return out;
}

std::string format_f(const FVector &f) {
    std::string s;
    for (size_t i = 0; i < f.size(); ++i) {
        if (i) {
            s += ' ';
        }
        s += std::to_string(f[i]);
    }
    return s;
}

}  // namespace stabbreed
