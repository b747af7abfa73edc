// Copyright 2026 The qpart Authors
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

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "qpart/assignment.hpp"
#include "qpart/circuit.hpp"

namespace qpart {

/// Two-tier edge weight. Current-slice interactions form the dominant tier,
/// so any positive `current` outweighs every finite `future` value.
struct TieredWeight {
    std::int64_t current = 0;
    double future = 0.0;

    TieredWeight &operator+=(const TieredWeight &o) {
        current += o.current;
        future += o.future;
        return *this;
    }
    TieredWeight &operator-=(const TieredWeight &o) {
        current -= o.current;
        future -= o.future;
        return *this;
    }
    friend TieredWeight operator+(TieredWeight a, const TieredWeight &b) { return a += b; }
    friend TieredWeight operator-(TieredWeight a, const TieredWeight &b) { return a -= b; }

    friend bool operator==(const TieredWeight &a, const TieredWeight &b) {
        return a.current == b.current && a.future == b.future;
    }
    friend bool operator<(const TieredWeight &a, const TieredWeight &b) {
        return a.current != b.current ? a.current < b.current : a.future < b.future;
    }
    friend bool operator>(const TieredWeight &a, const TieredWeight &b) { return b < a; }
    friend bool operator<=(const TieredWeight &a, const TieredWeight &b) { return !(b < a); }
    friend bool operator>=(const TieredWeight &a, const TieredWeight &b) { return !(a < b); }
};

/// Lookahead horizon covering the rest of the circuit.
inline constexpr int kFullHorizon = std::numeric_limits<int>::max();

/// Interaction graph of one timeslice with lookahead, stored as a dense
/// symmetric matrix.
class InteractionGraph {
  public:
    struct Edge {
        Qubit a;
        Qubit b;
        TieredWeight weight;
    };

    InteractionGraph() = default;
    InteractionGraph(int num_qubits, int slice_index);

    int num_qubits() const { return num_qubits_; }
    int slice_index() const { return slice_index_; }

    const TieredWeight &weight(Qubit a, Qubit b) const { return weights_[index(a, b)]; }
    bool has_edge(Qubit a, Qubit b) const { return present_[index(a, b)] != 0; }
    void add(Qubit a, Qubit b, const TieredWeight &w);

    /// Present edges with a < b in row-major order.
    std::vector<Edge> edges() const;

  private:
    std::size_t index(Qubit a, Qubit b) const {
        return static_cast<std::size_t>(a) * static_cast<std::size_t>(num_qubits_) + static_cast<std::size_t>(b);
    }

    int num_qubits_ = 0;
    int slice_index_ = 0;
    std::vector<TieredWeight> weights_;
    std::vector<char> present_;
};

/// Builds the graph for slice `t`: every pair of slice t adds 1 to the current
/// tier, every pair of slice t + d (1 <= d <= horizon) adds decay^d to the
/// future tier.
InteractionGraph lookahead_graph(std::span<const Timeslice> slices, int num_qubits, int t, double decay = 0.5,
                                 int horizon = kFullHorizon);

/// Graphs for every slice of a circuit.
std::vector<InteractionGraph> lookahead_graphs(std::span<const Timeslice> slices, int num_qubits,
                                               double decay = 0.5, int horizon = kFullHorizon);

/// Total weight of edges whose endpoints sit on different cores.
TieredWeight cut_weight(const InteractionGraph &graph, const Assignment &assignment);

/// Change in cut_weight if qubits a and b exchanged cores.
TieredWeight swap_cut_delta(const InteractionGraph &graph, const Assignment &assignment, Qubit a, Qubit b);

/// True iff both qubits of every pair in `slice` share a core.
bool is_valid(const Timeslice &slice, const Assignment &assignment);

/// Partner of every qubit in `slice`, or -1.
std::vector<Qubit> slice_partners(const Timeslice &slice, int num_qubits);

}  // namespace qpart
