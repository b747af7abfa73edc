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
#include <span>
#include <string_view>
#include <vector>

#include "qpart/assignment.hpp"
#include "qpart/circuit.hpp"
#include "qpart/interaction.hpp"

namespace qpart {

/// Number of qubits whose core differs between two assignments.
int nonlocal_moves(const Assignment &prev, const Assignment &next);

enum class InitialStrategy { round_robin, random };

InitialStrategy parse_initial_strategy(std::string_view name);

/// round_robin places qubit q on core q / capacity; random is a uniformly
/// random balanced assignment drawn from `seed`.
Assignment initial_assignment(int num_qubits, const CoreConfig &cores,
                              InitialStrategy strategy = InitialStrategy::round_robin, std::uint64_t seed = 0);

/// Most disjoint pairs a single slice can hold while staying valid.
int max_pairs_per_slice(const CoreConfig &cores);

/// Throws PartitionError if some slice cannot be made valid on `cores`, which
/// happens only for odd capacities.
void check_feasible(std::span<const Timeslice> slices, const CoreConfig &cores);

struct RoeeResult {
    Assignment assignment;
    int exchanges = 0;  // kept exchanges plus repair swaps
    int passes = 0;
    bool repaired = false;
};

/// Relaxed exchange partitioning of one slice.
///
/// Runs Kernighan-Lin style passes over the tiered cut: each step applies the
/// unlocked cross-core exchange with the largest cut reduction (ties go to
/// the lowest (a, b)) and locks both qubits. The search returns as soon as
/// the slice is valid, even mid-pass. A pass that ends without validity is
/// rolled back to its best prefix; if that prefix is empty, or `max_passes`
/// runs out, repair_direct_swap finishes the job.
RoeeResult roee_detailed(const InteractionGraph &graph, const Timeslice &slice, const Assignment &start,
                         int max_passes = 8);

inline Assignment roee(const InteractionGraph &graph, const Timeslice &slice, const Assignment &start,
                       int max_passes = 8) {
    return roee_detailed(graph, slice, start, max_passes).assignment;
}

struct RepairResult {
    Assignment assignment;
    int swaps = 0;
};

/// Fixes each violated pair (a, b), in slice order, by swapping a with the
/// occupant c of b's core that adds the least future-tier cut (ties to the
/// lowest c). Qubits of already co-located pairs and b itself are never
/// displaced. With even capacities one swap per violated pair always
/// suffices; odd capacities fall back to moving b, then to a third core, then
/// to repacking the slice.
RepairResult repair_direct_swap_detailed(const Timeslice &slice, const Assignment &assignment,
                                         const InteractionGraph &graph);

inline Assignment repair_direct_swap(const Timeslice &slice, const Assignment &assignment,
                                     const InteractionGraph &graph) {
    return repair_direct_swap_detailed(slice, assignment, graph).assignment;
}

/// Per-slice assignments with their movement counts. moves_per_step[0] is 0
/// (the initial placement is free); avg_moves averages over the
/// len - 1 transitions.
struct Trajectory {
    std::vector<Assignment> assignments;
    std::vector<int> moves_per_step;
    long long total_moves = 0;
    double avg_moves = 0.0;

    bool operator==(const Trajectory &) const = default;
};

Trajectory make_trajectory(std::vector<Assignment> assignments);

struct FgpOptions {
    double decay = 0.5;
    int horizon = kFullHorizon;
    int max_passes = 8;
    InitialStrategy initial = InitialStrategy::round_robin;
    std::uint64_t seed = 0;
};

struct FgpStats {
    int exchanges = 0;  // exchanges kept across all slices, repair swaps included
    int repairs = 0;    // slices that needed the repair fallback
};

/// Slice-by-slice relaxed exchange partitioning: slice t starts from the
/// assignment committed for slice t - 1.
Trajectory fgp_roee(std::span<const Timeslice> slices, const CoreConfig &cores, const FgpOptions &options = {},
                    FgpStats *stats = nullptr);

/// All balanced assignments in lexicographic order.
std::vector<Assignment> enumerate_balanced(const CoreConfig &cores);

/// Number of balanced assignments, saturating at `cap`.
std::uint64_t count_balanced(const CoreConfig &cores, std::uint64_t cap);

inline constexpr std::uint64_t kOracleBound = 10'000;

/// Exact minimum-movement trajectory by shortest path over the layered graph
/// of valid balanced assignments. Ties resolve to the lexicographically
/// smallest assignment sequence.
Trajectory oracle_optimal(std::span<const Timeslice> slices, const CoreConfig &cores,
                          std::uint64_t bound = kOracleBound);

}  // namespace qpart
