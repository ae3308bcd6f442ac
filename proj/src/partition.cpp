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

#include "stabbreed/partition.hpp"

#include <stdexcept>

namespace stabbreed {

MeasurementPartition MeasurementPartition::from_sets(size_t n, const std::set<size_t> &mz,
                                                     const std::set<size_t> &mx, const std::set<size_t> &my) {
    std::vector<int> seen(n, 0);
    std::vector<MeasBasis> bases(n, MeasBasis::Z);
    auto mark = [&](const std::set<size_t> &set, MeasBasis b) {
        for (size_t i : set) {
            if (i >= n) {
                throw std::invalid_argument("partition index out of range");
            }
            ++seen[i];
            bases[i] = b;
        }
    };
    mark(mz, MeasBasis::Z);
    mark(mx, MeasBasis::X);
    mark(my, MeasBasis::Y);
    for (size_t i = 0; i < n; ++i) {
        if (seen[i] != 1) {
            throw std::invalid_argument("partition sets must be disjoint and cover every qubit");
        }
    }
    return MeasurementPartition(std::move(bases));
}

MeasurementPartition MeasurementPartition::parse(std::string_view letters) {
    std::vector<MeasBasis> bases;
    bases.reserve(letters.size());
    for (char c : letters) {
        switch (c) {
            case 'z':
            case 'Z':
                bases.push_back(MeasBasis::Z);
                break;
            case 'x':
            case 'X':
                bases.push_back(MeasBasis::X);
                break;
            case 'y':
            case 'Y':
                bases.push_back(MeasBasis::Y);
                break;
            default:
                throw std::invalid_argument(std::string("invalid partition letter '") + c + "'");
        }
    }
    return MeasurementPartition(std::move(bases));
}

std::set<size_t> MeasurementPartition::indices(MeasBasis which) const {
    std::set<size_t> out;
    for (size_t i = 0; i < bases_.size(); ++i) {
        if (bases_[i] == which) {
            out.insert(i);
        }
    }
    return out;
}

std::string MeasurementPartition::str() const {
    std::string s;
    for (MeasBasis b : bases_) {
        s += "zxy"[static_cast<int>(b)];
    }
    return s;
}

std::set<size_t> support(const BitVector &v) {
    std::set<size_t> out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (v.get(i)) {
            out.insert(i);
        }
    }
    return out;
}

MeasurableSubspace measurable_subspace(const StabilizerRep &s, const MeasurementPartition &m) {
    size_t n = s.num_qubits();
    if (m.num_qubits() != n) {
        throw std::invalid_argument("partition size does not match the state's qubit count");
    }
    BitMatrix sz = s.s_z();
    BitMatrix sx = s.s_x();
    BitMatrix constraints(n, n);
    for (size_t i = 0; i < n; ++i) {
        switch (m.basis(i)) {
            case MeasBasis::Z:
                constraints.set_row(i, sx.row(i));
                break;
            case MeasBasis::X:
                constraints.set_row(i, sz.row(i));
                break;
            case MeasBasis::Y:
                constraints.set_row(i, sz.row(i) ^ sx.row(i));
                break;
        }
    }
    return MeasurableSubspace{m, nullspace_basis(constraints)};
}

std::vector<MeasurementPartition> enumerate_partitions(size_t n, size_t limit) {
    if (n > limit) {
        throw std::invalid_argument("partition enumeration over " + std::to_string(n) +
                                    " qubits exceeds the limit of " + std::to_string(limit));
    }
    size_t total = 1;
    for (size_t i = 0; i < n; ++i) {
        total *= 3;
    }
    std::vector<MeasurementPartition> out;
    out.reserve(total);
    std::vector<MeasBasis> digits(n, MeasBasis::Z);
    for (size_t count = 0; count < total; ++count) {
        out.emplace_back(digits);
        for (size_t i = 0; i < n; ++i) {
            auto d = static_cast<uint8_t>(digits[i]);
            if (d < 2) {
                digits[i] = static_cast<MeasBasis>(d + 1);
                break;
            }
            digits[i] = MeasBasis::Z;
        }
    }
    return out;
}

std::vector<MeasurableSubspace> best_partitions(const StabilizerRep &s, size_t limit) {
    std::vector<MeasurableSubspace> best;
    size_t best_dim = 0;
    for (const auto &m : enumerate_partitions(s.num_qubits(), limit)) {
        MeasurableSubspace v = measurable_subspace(s, m);
        if (best.empty() || v.dim() > best_dim) {
            best_dim = v.dim();
            best.clear();
        }
        if (v.dim() == best_dim) {
            best.push_back(std::move(v));
        }
    }
    return best;
}

std::vector<MeasurementPartition> parse_partitions(std::string_view text, size_t n) {
    std::vector<MeasurementPartition> out;
    for (const auto &line : significant_lines(text)) {
        if (line.text.size() != n) {
            throw ParseError(line.number, "partition must have " + std::to_string(n) + " letters, found " +
                                              std::to_string(line.text.size()));
        }
        try {
            out.push_back(MeasurementPartition::parse(line.text));
        } catch (const std::invalid_argument &e) {
            throw ParseError(line.number, e.what());
        }
    }
    if (out.empty()) {
        throw ParseError(0, "partition file lists no partitions");
    }
    return out;
}

std::vector<MeasurementPartition> ring5_partitions() {
    return {
        MeasurementPartition::parse("xxzzz"),
        MeasurementPartition::parse("zxxzz"),
        MeasurementPartition::parse("zzxxz"),
        MeasurementPartition::parse("zzzxx"),
        MeasurementPartition::parse("xzzzx"),
    };
}

}  // namespace stabbreed
