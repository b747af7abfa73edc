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

#include "qpart/interaction.hpp"

#include <string>

namespace qpart {

InteractionGraph::InteractionGraph(int num_qubits, int slice_index)
    : num_qubits_(num_qubits),
      slice_index_(slice_index),
      weights_(static_cast<std::size_t>(num_qubits) * static_cast<std::size_t>(num_qubits)),
      present_(weights_.size(), 0) {}

void InteractionGraph::add(Qubit a, Qubit b, const TieredWeight &w) {
    if (a == b) {
        throw PartitionError("self-loop on qubit " + std::to_string(a));
    }
    weights_[index(a, b)] += w;
    weights_[index(b, a)] += w;
    present_[index(a, b)] = present_[index(b, a)] = 1;
}

std::vector<InteractionGraph::Edge> InteractionGraph::edges() const {
    std::vector<Edge> out;
    for (Qubit a = 0; a < num_qubits_; ++a) {
        for (Qubit b = a + 1; b < num_qubits_; ++b) {
            if (has_edge(a, b)) {
                out.push_back(Edge{a, b, weight(a, b)});
            }
        }
    }
    return out;
}

InteractionGraph lookahead_graph(std::span<const Timeslice> slices, int num_qubits, int t, double decay,
                                 int horizon) {
    if (t < 0 || t >= static_cast<int>(slices.size())) {
        throw PartitionError("slice index " + std::to_string(t) + " out of range for " +
                             std::to_string(slices.size()) + " slices");
    }
    if (horizon < 0) {
        throw PartitionError("negative lookahead horizon");
    }
    InteractionGraph graph(num_qubits, t);
    for (const Gate &g : slices[t].pairs) {
        graph.add(g.a, g.b, TieredWeight{1, 0.0});
    }
    double w = 1.0;
    const int last = static_cast<int>(slices.size()) - 1;
    for (int d = 1; d <= horizon && t + d <= last; ++d) {
        w *= decay;
        for (const Gate &g : slices[t + d].pairs) {
            graph.add(g.a, g.b, TieredWeight{0, w});
        }
    }
    return graph;
}

std::vector<InteractionGraph> lookahead_graphs(std::span<const Timeslice> slices, int num_qubits, double decay,
                                               int horizon) {
    std::vector<InteractionGraph> out;
    out.reserve(slices.size());
    for (int t = 0; t < static_cast<int>(slices.size()); ++t) {
        out.push_back(lookahead_graph(slices, num_qubits, t, decay, horizon));
    }
    return out;
}

TieredWeight cut_weight(const InteractionGraph &graph, const Assignment &assignment) {
    if (assignment.num_qubits() != graph.num_qubits()) {
        throw PartitionError("assignment covers " + std::to_string(assignment.num_qubits()) + " qubits, graph has " +
                             std::to_string(graph.num_qubits()));
    }
    TieredWeight total;
    const int n = graph.num_qubits();
    for (Qubit a = 0; a < n; ++a) {
        for (Qubit b = a + 1; b < n; ++b) {
            if (graph.has_edge(a, b) && assignment.core(a) != assignment.core(b)) {
                total += graph.weight(a, b);
            }
        }
    }
    return total;
}

TieredWeight swap_cut_delta(const InteractionGraph &graph, const Assignment &assignment, Qubit a, Qubit b) {
    TieredWeight delta;
    const int core_a = assignment.core(a);
    const int core_b = assignment.core(b);
    if (core_a == core_b) {
        return delta;
    }
    const int n = graph.num_qubits();
    for (Qubit x = 0; x < n; ++x) {
        if (x == a || x == b) {
            continue;
        }
        const int cx = assignment.core(x);
        if (graph.has_edge(a, x)) {
            // a leaves core_a for core_b
            if (cx == core_a) {
                delta += graph.weight(a, x);
            } else if (cx == core_b) {
                delta -= graph.weight(a, x);
            }
        }
        if (graph.has_edge(b, x)) {
            if (cx == core_b) {
                delta += graph.weight(b, x);
            } else if (cx == core_a) {
                delta -= graph.weight(b, x);
            }
        }
    }
    return delta;
}

bool is_valid(const Timeslice &slice, const Assignment &assignment) {
    for (const Gate &g : slice.pairs) {
        if (assignment.core(g.a) != assignment.core(g.b)) {
            return false;
        }
    }
    return true;
}

std::vector<Qubit> slice_partners(const Timeslice &slice, int num_qubits) {
    std::vector<Qubit> partner(static_cast<std::size_t>(num_qubits), -1);
    for (const Gate &g : slice.pairs) {
        partner[g.a] = g.b;
        partner[g.b] = g.a;
    }
    return partner;
}

}  // namespace qpart
