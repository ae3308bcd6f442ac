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


// stabbreed: yield curves, measurement partitions, breeding matrices and
// protocol simulation from the command line.
//
// Exit codes: 0 success, 1 usage, 2 input validation, 3 internal verification.

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "stabbreed/entropy.hpp"
#include "stabbreed/orthogonal.hpp"
#include "stabbreed/partition.hpp"
#include "stabbreed/protocol.hpp"
#include "stabbreed/stabilizer.hpp"
#include "stabbreed/yield.hpp"

namespace {

using namespace stabbreed;

constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitVerify = 3;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct VerifyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot read '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Parse errors are reported against the file they came from.
template <typename Fn>
auto parse_file(const std::string &path, Fn fn) {
    std::string text = read_file(path);
    try {
        return fn(text);
    } catch (const ParseError &e) {
        throw InputError(path + ": " + e.what());
    }
}

// Shortest round-trip decimal, always with a fractional part.
std::string num(double x) {
    x += 0.0;  // no "-0"
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    std::string s(buf, end);
    if (s.find_first_of(".en") == std::string::npos) {
        s += ".0";
    }
    return s;
}

class Output {
   public:
    explicit Output(const std::string &path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) {
                throw InputError("cannot write '" + path + "'");
            }
        }
    }
    std::ostream &stream() { return file_.is_open() ? static_cast<std::ostream &>(file_) : std::cout; }

   private:
    std::ofstream file_;
};

struct StateArgs {
    std::string preset;
    std::string state_file;
};

void add_state_options(CLI::App *cmd, StateArgs &args) {
    auto *preset = cmd->add_option("--preset", args.preset, "Built-in example (ring5)")->check(CLI::IsMember({"ring5"}));
    auto *state = cmd->add_option("--state", args.state_file, "Stabilizer state file");
    preset->excludes(state);
}

StabilizerRep load_state(const StateArgs &args) {
    if (args.preset == "ring5") {
        return graph_state_rep(ring5_adjacency());
    }
    if (args.state_file.empty()) {
        throw CLI::RequiredError("--state or --preset");
    }
    try {
        return parse_file(args.state_file, [](const std::string &t) { return parse_stabilizer(t); });
    } catch (const std::invalid_argument &e) {
        throw InputError(args.state_file + ": " + e.what());
    }
}

std::vector<MeasurableSubspace> subspaces_for(const StabilizerRep &s, const std::vector<MeasurementPartition> &ms) {
    std::vector<MeasurableSubspace> out;
    for (const auto &m : ms) {
        out.push_back(measurable_subspace(s, m));
    }
    return out;
}

// "auto" picks every partition of maximal n(M); the ring5 preset defaults to
// its five listed partitions.
std::vector<MeasurableSubspace> load_partitions(const StabilizerRep &s, const StateArgs &state,
                                                const std::string &spec, size_t limit) {
    if (spec.empty() && state.preset == "ring5") {
        return subspaces_for(s, ring5_partitions());
    }
    if (spec.empty() || spec == "auto") {
        return best_partitions(s, limit);
    }
    auto ms = parse_file(spec, [&](const std::string &t) { return parse_partitions(t, s.num_qubits()); });
    return subspaces_for(s, ms);
}

NoiseModel load_noise(const std::string &spec, size_t n) {
    if (std::filesystem::exists(spec)) {
        return parse_file(spec, [&](const std::string &t) { return parse_noise_model(t, n); });
    }
    try {
        return parse_noise_model(spec, n);
    } catch (const ParseError &e) {
        throw InputError("--noise '" + spec + "': not a file and not a model (" + e.what() + ")");
    }
}

// ---- yield ---------------------------------------------------------------

struct YieldArgs {
    StateArgs state;
    std::string partitions;
    std::vector<double> fidelities;
    size_t grid = 99;
    bool closed_form = false;
    size_t threads = 0;
    size_t limit = kDefaultPartitionLimit;
    std::string output;
};

int run_yield(const YieldArgs &args) {
    if (args.closed_form && args.state.preset != "ring5") {
        throw CLI::ValidationError("--closed-form-check", "only defined for --preset ring5");
    }
    StabilizerRep s = load_state(args.state);
    auto parts = load_partitions(s, args.state, args.partitions, args.limit);
    std::vector<double> grid = args.fidelities;
    if (grid.empty()) {
        if (args.grid == 0) {
            throw InputError("--grid must be positive");
        }
        for (size_t i = 1; i <= args.grid; ++i) {
            grid.push_back(static_cast<double>(i) / static_cast<double>(args.grid));
        }
    }
    for (double f : grid) {
        if (!(f > 0.0 && f <= 1.0)) {
            throw InputError("fidelity " + num(f) + " outside (0, 1]");
        }
    }
    auto curve = yield_curve(s.num_qubits(), parts, grid, args.threads);
    Output out(args.output);
    std::ostream &os = out.stream();
    os << "F,gamma,sum_m,binding_f" << (args.closed_form ? ",closed_form" : "") << "\n";
    std::vector<double> clamped;
    for (const auto &pt : curve) {
        std::string binding;
        for (const auto &f : pt.binding_f) {
            binding += (binding.empty() ? "" : ";") + format_f(f);
        }
        os << num(pt.fidelity) << ',' << num(pt.solution.gamma) << ',' << num(pt.solution.sum_m) << ',' << binding;
        if (args.closed_form) {
            os << ',' << num(1.0 - pt.entropy / 2.0);
        }
        os << "\n";
        if (pt.solution.clamped) {
            clamped.push_back(pt.fidelity);
        }
    }
    if (!clamped.empty()) {
        auto [lo, hi] = std::minmax_element(clamped.begin(), clamped.end());
        std::cerr << "warning: breeding infeasible (sum_m > 1, gamma clamped to 0) at " << clamped.size()
                  << " grid point(s), F in [" << num(*lo) << ", " << num(*hi) << "]\n";
    }
    return 0;
}

// ---- partitions ----------------------------------------------------------

struct PartitionArgs {
    StateArgs state;
    bool force = false;
    size_t limit = kDefaultPartitionLimit;
    std::string output;
};

int run_partitions(const PartitionArgs &args) {
    StabilizerRep s = load_state(args.state);
    size_t limit = args.force ? std::max(args.limit, s.num_qubits()) : args.limit;
    if (s.num_qubits() > limit) {
        throw InputError("n = " + std::to_string(s.num_qubits()) + " exceeds the enumeration cap of " +
                         std::to_string(limit) + " (3^n partitions); pass --force to enumerate anyway");
    }
    auto best = best_partitions(s, limit);
    Output out(args.output);
    std::ostream &os = out.stream();
    os << "max_dim " << (best.empty() ? 0 : best.front().dim()) << "\n";
    os << "count " << best.size() << "\n";
    for (const auto &b : best) {
        os << "partition " << b.partition.str() << "\n" << format_matrix(b.v_basis);
    }
    return 0;
}

// ---- orthogonal ----------------------------------------------------------

struct OrthogonalArgs {
    std::string q_file;
    size_t k = 0;
    size_t c = 0;
    uint64_t seed = 0;
    std::string output;
};

int run_orthogonal(const OrthogonalArgs &args) {
    BitMatrix q;
    if (!args.q_file.empty()) {
        q = parse_file(args.q_file, [](const std::string &t) { return parse_matrix(t); });
    } else {
        if (args.k == 0 || args.c == 0 || args.c > args.k) {
            throw InputError("need --q FILE, or --k and --c with 0 < c <= k");
        }
        std::mt19937_64 rng(args.seed);
        q = random_full_rank(args.k, args.c, rng);
    }
    BreedingMatrix bm = build_breeding_matrix(q);
    const size_t k = q.rows();
    const size_t c = bm.q_used.cols();
    if (!is_orthogonal(bm.a) || !(bm.a.block(k, 0, c, k) == bm.q_used.transpose())) {
        throw VerifyError("A^T A = I or the Q'^T block check failed");
    }
    Output out(args.output);
    std::ostream &os = out.stream();
    os << "# A\n" << format_matrix(bm.a) << "# Q'\n" << format_matrix(bm.q_used);
    os << "# repairs " << bm.column_repairs.size() << "\n";
    for (const auto &r : bm.column_repairs) {
        os << "# " << r.str() << "\n";
    }
    return 0;
}

// ---- simulate ------------------------------------------------------------

struct SimulateArgs {
    StateArgs state;
    std::string noise;
    size_t k = 16;
    std::optional<double> gamma;
    std::string allocation = "auto";
    size_t trials = 200;
    size_t deltas = 8;
    size_t candidates = 64;
    double eps = 0.1;
    uint64_t seed = 0;
    size_t limit = kDefaultPartitionLimit;
    std::string output;
};

// Allocation file: one "partition count" pair per line.
std::pair<std::vector<MeasurementPartition>, std::vector<size_t>> parse_allocation(const std::string &text, size_t n) {
    std::vector<MeasurementPartition> parts;
    std::vector<size_t> counts;
    for (const auto &line : significant_lines(text)) {
        std::istringstream in(line.text);
        std::string letters;
        long long count = -1;
        std::string extra;
        if (!(in >> letters >> count) || (in >> extra) || count < 0) {
            throw ParseError(line.number, "expected 'partition count'");
        }
        auto p = parse_partitions(letters, n);
        parts.push_back(p.front());
        counts.push_back(static_cast<size_t>(count));
    }
    if (parts.empty()) {
        throw ParseError(0, "empty allocation");
    }
    return {parts, counts};
}

int run_simulate(const SimulateArgs &args) {
    StabilizerRep s = load_state(args.state);
    std::string noise_spec = args.noise;
    if (noise_spec.empty()) {
        if (args.state.preset != "ring5") {
            throw CLI::RequiredError("--noise");
        }
        noise_spec = "werner 0.9";
    }
    if (args.k == 0 || args.trials == 0) {
        throw InputError("--k and --trials must be positive");
    }
    NoiseModel noise = load_noise(noise_spec, s.num_qubits());
    ProtocolConfig cfg{s, noise};
    cfg.k = args.k;
    cfg.eps = args.eps;
    cfg.seed = args.seed;
    cfg.sampled_candidates = args.candidates;
    if (args.allocation == "auto") {
        cfg.partitions = load_partitions(s, args.state, "", args.limit);
        YieldSolution sol = solve_lp(build_problem(noise, cfg.partitions));
        double gamma = args.gamma.value_or(sol.gamma);
        if (!(gamma >= 0.0 && gamma <= 1.0)) {
            throw InputError("--gamma must lie in [0, 1]");
        }
        // Spread (1 - gamma) k measurements in proportion to the LP fractions.
        std::vector<double> m = sol.m;
        double total = std::accumulate(m.begin(), m.end(), 0.0);
        for (auto &x : m) {
            x = total > 0.0 ? x / total * (1.0 - gamma) : (1.0 - gamma) / static_cast<double>(m.size());
        }
        cfg.allocation = round_allocation(m, args.k);
        size_t used = std::accumulate(cfg.allocation.begin(), cfg.allocation.end(), size_t{0});
        cfg.gamma = 1.0 - static_cast<double>(used) / static_cast<double>(args.k);
    } else {
        auto [ms, counts] = parse_file(args.allocation,
                                       [&](const std::string &t) { return parse_allocation(t, s.num_qubits()); });
        cfg.partitions = subspaces_for(s, ms);
        cfg.allocation = counts;
        size_t used = std::accumulate(counts.begin(), counts.end(), size_t{0});
        cfg.gamma = args.gamma.value_or(1.0 - static_cast<double>(used) / static_cast<double>(args.k));
    }
    cfg.explicit_deltas = sample_deltas(noise, args.k, args.deltas, split_seed(args.seed, ~uint64_t{0}));
    auto rows = survival_report(cfg, args.trials);

    std::cerr << "k=" << cfg.k << " gamma=" << num(cfg.gamma) << " measurements=";
    for (size_t i = 0; i < cfg.partitions.size(); ++i) {
        std::cerr << (i ? ";" : "") << cfg.partitions[i].partition.str() << ":" << cfg.allocation[i];
    }
    std::cerr << "\n";

    Output out(args.output);
    std::ostream &os = out.stream();
    os << "delta_index,sum_d,predicted,empirical,trials\n";
    for (size_t i = 0; i < rows.size(); ++i) {
        os << i << ',' << rows[i].exponent << ',' << num(rows[i].predicted) << ',' << num(rows[i].empirical) << ','
           << rows[i].runs << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Breeding-protocol yields and constructions for stabilizer states"};
    app.require_subcommand(1);

    YieldArgs ya;
    auto *yield = app.add_subcommand("yield", "Yield curve over the Werner-style fidelity family");
    add_state_options(yield, ya.state);
    yield->add_option("--partitions", ya.partitions, "Partition file, or 'auto' for all maximal-n(M) partitions");
    yield->add_option("--fidelity", ya.fidelities, "Explicit fidelity values (repeatable)");
    yield->add_option("--grid", ya.grid, "Grid F = i/N for i = 1..N when no --fidelity is given")->capture_default_str();
    yield->add_flag("--closed-form-check", ya.closed_form, "Append the 1 - H/2 column (ring5 preset)");
    yield->add_option("--threads", ya.threads, "Worker threads (0 = hardware)");
    yield->add_option("--limit", ya.limit, "Partition enumeration cap for 'auto'")->capture_default_str();
    yield->add_option("-o,--output", ya.output, "CSV output path (default stdout)");

    PartitionArgs pa;
    auto *parts = app.add_subcommand("partitions", "List partitions attaining the maximal n(M)");
    add_state_options(parts, pa.state);
    parts->add_flag("--force", pa.force, "Enumerate even above the cap");
    parts->add_option("--limit", pa.limit, "Enumeration cap on n")->capture_default_str();
    parts->add_option("-o,--output", pa.output, "Report path (default stdout)");

    OrthogonalArgs oa;
    auto *ortho = app.add_subcommand("orthogonal", "Build an orthogonal breeding matrix from Q");
    auto *qopt = ortho->add_option("--q", oa.q_file, "Q matrix file (k x c)");
    ortho->add_option("--k", oa.k, "Rows of a random Q")->excludes(qopt);
    ortho->add_option("--c", oa.c, "Columns of a random Q")->excludes(qopt);
    ortho->add_option("--seed", oa.seed, "Seed for the random Q")->capture_default_str();
    ortho->add_option("-o,--output", oa.output, "Output path (default stdout)");

    SimulateArgs sa;
    auto *sim = app.add_subcommand("simulate", "Monte Carlo survival of wrong phase candidates");
    add_state_options(sim, sa.state);
    sim->add_option("--noise", sa.noise, "Noise model file or inline spec such as 'werner 0.9'");
    sim->add_option("--k", sa.k, "Noisy copies")->capture_default_str();
    sim->add_option("--gamma", sa.gamma, "Target yield (default: the LP optimum)");
    sim->add_option("--allocation", sa.allocation, "Allocation file or 'auto'")->capture_default_str();
    sim->add_option("--trials", sa.trials, "Protocol runs")->capture_default_str();
    sim->add_option("--deltas", sa.deltas, "Random wrong candidates to follow")->capture_default_str();
    sim->add_option("--candidates", sa.candidates, "Random typical candidates tracked per run")->capture_default_str();
    sim->add_option("--eps", sa.eps, "Typicality tolerance")->capture_default_str();
    sim->add_option("--seed", sa.seed, "RNG seed")->capture_default_str();
    sim->add_option("--limit", sa.limit, "Partition enumeration cap")->capture_default_str();
    sim->add_option("-o,--output", sa.output, "CSV output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*yield) {
            return run_yield(ya);
        }
        if (*parts) {
            return run_partitions(pa);
        }
        if (*ortho) {
            return run_orthogonal(oa);
        }
        return run_simulate(sa);
    } catch (const CLI::Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InputError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const ParseError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const VerifyError &e) {
        std::cerr << "internal verification failed: " << e.what() << "\n";
        return kExitVerify;
    } catch (const std::logic_error &e) {
        std::cerr << "internal verification failed: " << e.what() << "\n";
        return kExitVerify;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
}
