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

#include "qpart/partition.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <string>

#include "qpart/rng.hpp"

namespace qpart {

int nonlocal_moves(const Assignment &prev, const Assignment &next) {
    if (prev.num_qubits() != next.num_qubits()) {
        throw PartitionError("assignment size mismatch: " + std::to_string(prev.num_qubits()) + " vs " +
                             std::to_string(next.num_qubits()));
    }
    int moves = 0;
    for (Qubit q = 0; q < prev.num_qubits(); ++q) {
        moves += prev.core(q) != next.core(q);
    }
    return moves;
}

InitialStrategy parse_initial_strategy(std::string_view name) {
    if (name == "round_robin" || name == "round-robin") {
        return InitialStrategy::round_robin;
    }
    if (name == "random") {
        return InitialStrategy::random;
    }
    throw PartitionError("unknown initial strategy '" + std::string(name) + "'");
}

Assignment initial_assignment(int num_qubits, const CoreConfig &cores, InitialStrategy strategy,
                              std::uint64_t seed) {
    CoreConfig checked = CoreConfig::for_qubits(num_qubits, cores.num_cores);
    if (checked.capacity != cores.capacity) {
        throw PartitionError("core capacity " + std::to_string(cores.capacity) + " does not match " +
                             std::to_string(num_qubits) + " qubits on " + std::to_string(cores.num_cores) +
                             " cores");
    }
    std::vector<int> core_of(static_cast<std::size_t>(num_qubits));
    for (Qubit q = 0; q < num_qubits; ++q) {
        core_of[q] = q / cores.capacity;
    }
    if (strategy == InitialStrategy::random) {
        Rng rng(seed);
        rng.shuffle(std::span<int>(core_of));
    }
    return Assignment(std::move(core_of), cores.num_cores);
}

int max_pairs_per_slice(const CoreConfig &cores) { return cores.num_cores * (cores.capacity / 2); }

void check_feasible(std::span<const Timeslice> slices, const CoreConfig &cores) {
    const int limit = max_pairs_per_slice(cores);
    for (const Timeslice &s : slices) {
        if (static_cast<int>(s.pairs.size()) > limit) {
            throw PartitionError("slice " + std::to_string(s.index) + " has " + std::to_string(s.pairs.size()) +
                                 " pairs but " + std::to_string(cores.num_cores) + " cores of capacity " +
                                 std::to_string(cores.capacity) + " hold at most " + std::to_string(limit));
        }
    }
}

RoeeResult roee_detailed(const InteractionGraph &graph, const Timeslice &slice, const Assignment &start,
                         int max_passes) {
    RoeeResult result{start, 0, 0, false};
    Assignment &cur = result.assignment;
    if (is_valid(slice, cur)) {
        return result;
    }
    const int n = cur.num_qubits();

    for (int pass = 0; pass < max_passes; ++pass) {
        ++result.passes;
        std::vector<char> locked(static_cast<std::size_t>(n), 0);
        std::vector<std::pair<Qubit, Qubit>> applied;
        TieredWeight gain_so_far;
        TieredWeight best_gain;
        std::size_t best_prefix = 0;

        while (true) {
            std::optional<std::pair<Qubit, Qubit>> choice;
            TieredWeight choice_delta;
            for (Qubit a = 0; a < n; ++a) {
                if (locked[a]) {
                    continue;
                }
                for (Qubit b = a + 1; b < n; ++b) {
                    if (locked[b] || cur.core(a) == cur.core(b)) {
                        continue;
                    }
                    TieredWeight delta = swap_cut_delta(graph, cur, a, b);
                    if (!choice || delta < choice_delta) {
                        choice = {a, b};
                        choice_delta = delta;
                    }
                }
            }
            if (!choice) {
                break;
            }
            auto [a, b] = *choice;
            cur.swap(a, b);
            locked[a] = locked[b] = 1;
            applied.push_back(*choice);
            gain_so_far -= choice_delta;
            if (is_valid(slice, cur)) {
                result.exchanges += static_cast<int>(applied.size());
                return result;
            }
            if (gain_so_far > best_gain) {
                best_gain = gain_so_far;
                best_prefix = applied.size();
            }
        }

        for (std::size_t i = applied.size(); i > best_prefix; --i) {
            cur.swap(applied[i - 1].first, applied[i - 1].second);
        }
        result.exchanges += static_cast<int>(best_prefix);
        if (best_prefix == 0) {
            break;
        }
    }

    RepairResult repaired = repair_direct_swap_detailed(slice, cur, graph);
    result.assignment = std::move(repaired.assignment);
    result.exchanges += repaired.swaps;
    result.repaired = true;
    return result;
}

namespace {

// Valid assignment close to `cur`: pairs stay on an endpoint's core when it has
// room, loose qubits stay put when possible.
Assignment repack(const Timeslice &slice, const Assignment &cur) {
    const int n = cur.num_qubits();
    const int k = cur.num_cores();
    const int capacity = n / k;
    std::vector<int> room(static_cast<std::size_t>(k), capacity);
    std::vector<int> core_of(static_cast<std::size_t>(n), -1);

    for (const Gate &g : slice.pairs) {
        int target = -1;
        for (int c : {cur.core(g.a), cur.core(g.b)}) {
            if (room[c] >= 2) {
                target = c;
                break;
            }
        }
        for (int c = 0; c < k && target < 0; ++c) {
            if (room[c] >= 2) {
                target = c;
            }
        }
        if (target < 0) {
            throw PartitionError("slice " + std::to_string(slice.index) + " cannot be made valid on " +
                                 std::to_string(k) + " cores of capacity " + std::to_string(capacity));
        }
        core_of[g.a] = core_of[g.b] = target;
        room[target] -= 2;
    }
    for (Qubit q = 0; q < n; ++q) {
        if (core_of[q] < 0 && room[cur.core(q)] > 0) {
            core_of[q] = cur.core(q);
            --room[cur.core(q)];
        }
    }
    for (Qubit q = 0; q < n; ++q) {
        if (core_of[q] < 0) {
            int c = 0;
            while (room[c] == 0) {
                ++c;
            }
            core_of[q] = c;
            --room[c];
        }
    }
    return Assignment(std::move(core_of), k);
}

}  // namespace

RepairResult repair_direct_swap_detailed(const Timeslice &slice, const Assignment &assignment,
                                         const InteractionGraph &graph) {
    RepairResult result{assignment, 0};
    Assignment &cur = result.assignment;
    const int n = cur.num_qubits();
    const auto partner = slice_partners(slice, n);
    auto satisfied = [&](Qubit q) { return partner[q] >= 0 && cur.core(q) == cur.core(partner[q]); };

    // Occupant of `core` to trade with `mover`, or -1.
    auto pick = [&](Qubit mover, int core, Qubit keep) {
        Qubit best = -1;
        double best_increase = 0.0;
        for (Qubit c = 0; c < n; ++c) {
            if (c == keep || cur.core(c) != core || satisfied(c)) {
                continue;
            }
            double increase = swap_cut_delta(graph, cur, mover, c).future;
            if (best < 0 || increase < best_increase) {
                best = c;
                best_increase = increase;
            }
        }
        return best;
    };

    for (const Gate &g : slice.pairs) {
        if (cur.core(g.a) == cur.core(g.b)) {
            continue;
        }
        if (Qubit c = pick(g.a, cur.core(g.b), g.b); c >= 0) {
            cur.swap(g.a, c);
            ++result.swaps;
            continue;
        }
        if (Qubit c = pick(g.b, cur.core(g.a), g.a); c >= 0) {
            cur.swap(g.b, c);
            ++result.swaps;
            continue;
        }
        // Odd capacity: both endpoint cores are full of co-located pairs.
        bool moved = false;
        for (int core = 0; core < cur.num_cores() && !moved; ++core) {
            if (core == cur.core(g.a) || core == cur.core(g.b)) {
                continue;
            }
            Qubit c1 = pick(g.a, core, -1);
            if (c1 < 0) {
                continue;
            }
            Assignment trial = cur;
            trial.swap(g.a, c1);
            Qubit c2 = -1;
            for (Qubit c = 0; c < n; ++c) {
                if (c != c1 && c != g.a && trial.core(c) == core &&
                    !(partner[c] >= 0 && trial.core(c) == trial.core(partner[c]))) {
                    c2 = c;
                    break;
                }
            }
            if (c2 >= 0) {
                cur = std::move(trial);
                cur.swap(g.b, c2);
                result.swaps += 2;
                moved = true;
            }
        }
        if (!moved) {
            result.assignment = repack(slice, cur);
            return result;
        }
    }
    return result;
}

Trajectory make_trajectory(std::vector<Assignment> assignments) {
    Trajectory t;
    t.assignments = std::move(assignments);
    t.moves_per_step.assign(t.assignments.size(), 0);
    for (std::size_t i = 1; i < t.assignments.size(); ++i) {
        t.moves_per_step[i] = nonlocal_moves(t.assignments[i - 1], t.assignments[i]);
        t.total_moves += t.moves_per_step[i];
    }
    if (t.assignments.size() > 1) {
        t.avg_moves = static_cast<double>(t.total_moves) / static_cast<double>(t.assignments.size() - 1);
    }
    return t;
}

Trajectory fgp_roee(std::span<const Timeslice> slices, const CoreConfig &cores, const FgpOptions &options,
                    FgpStats *stats) {
    if (slices.empty()) {
        throw PartitionError("fgp_roee needs at least one timeslice");
    }
    check_feasible(slices, cores);
    const int n = cores.num_qubits();
    std::vector<Assignment> path;
    path.reserve(slices.size());
    Assignment cur = initial_assignment(n, cores, options.initial, options.seed);
    for (int t = 0; t < static_cast<int>(slices.size()); ++t) {
        InteractionGraph graph = lookahead_graph(slices, n, t, options.decay, options.horizon);
        RoeeResult step = roee_detailed(graph, slices[t], cur, options.max_passes);
        if (stats) {
            stats->exchanges += step.exchanges;
            stats->repairs += step.repaired;
        }
        cur = std::move(step.assignment);
        path.push_back(cur);
    }
    return make_trajectory(std::move(path));
}

std::uint64_t count_balanced(const CoreConfig &cores, std::uint64_t cap) {
    // Multinomial n! / (capacity!)^k as a product of binomials, saturating.
    std::uint64_t total = 1;
    int remaining = cores.num_qubits();
    for (int c = 0; c < cores.num_cores; ++c) {
        std::uint64_t binom = 1;
        for (int i = 1; i <= cores.capacity; ++i) {
            // binom(remaining, i) = binom(remaining, i - 1) * (remaining - i + 1) / i, exact at each step
            unsigned __int128 next = static_cast<unsigned __int128>(binom) * static_cast<unsigned>(remaining - i + 1);
            next /= static_cast<unsigned>(i);
            if (next > cap) {
                return cap;
            }
            binom = static_cast<std::uint64_t>(next);
        }
        unsigned __int128 product = static_cast<unsigned __int128>(total) * binom;
        if (product > cap) {
            return cap;
        }
        total = static_cast<std::uint64_t>(product);
        remaining -= cores.capacity;
    }
    return total;
}

std::vector<Assignment> enumerate_balanced(const CoreConfig &cores) {
    const int n = cores.num_qubits();
    std::vector<Assignment> out;
    std::vector<int> core_of(static_cast<std::size_t>(n), 0);
    std::vector<int> room(static_cast<std::size_t>(cores.num_cores), cores.capacity);
    auto recurse = [&](auto &&self, int q) -> void {
        if (q == n) {
            out.emplace_back(core_of, cores.num_cores);
            return;
        }
        for (int c = 0; c < cores.num_cores; ++c) {
            if (room[c] == 0) {
                continue;
            }
            core_of[q] = c;
            --room[c];
            self(self, q + 1);
            ++room[c];
        }
    };
    recurse(recurse, 0);
    return out;
}

Trajectory oracle_optimal(std::span<const Timeslice> slices, const CoreConfig &cores, std::uint64_t bound) {
    if (slices.empty()) {
        throw PartitionError("oracle needs at least one timeslice");
    }
    const std::uint64_t count = count_balanced(cores, bound + 1);
    if (count > bound) {
        throw PartitionError("instance too large for the oracle: more than " + std::to_string(bound) +
                             " balanced assignments");
    }
    const auto nodes = enumerate_balanced(cores);
    const int num_slices = static_cast<int>(slices.size());

    std::vector<std::vector<int>> layers(static_cast<std::size_t>(num_slices));
    for (int t = 0; t < num_slices; ++t) {
        for (int i = 0; i < static_cast<int>(nodes.size()); ++i) {
            if (is_valid(slices[t], nodes[i])) {
                layers[t].push_back(i);
            }
        }
        if (layers[t].empty()) {
            throw PartitionError("slice " + std::to_string(t) + " has no valid balanced assignment");
        }
    }

    // cost_to_go[t][j]: fewest moves from layers[t][j] through the last slice.
    constexpr long long kInf = std::numeric_limits<long long>::max();
    std::vector<std::vector<long long>> cost_to_go(static_cast<std::size_t>(num_slices));
    cost_to_go[num_slices - 1].assign(layers[num_slices - 1].size(), 0);
    for (int t = num_slices - 2; t >= 0; --t) {
        cost_to_go[t].assign(layers[t].size(), kInf);
        for (std::size_t i = 0; i < layers[t].size(); ++i) {
            const Assignment &from = nodes[layers[t][i]];
            for (std::size_t j = 0; j < layers[t + 1].size(); ++j) {
                long long c = nonlocal_moves(from, nodes[layers[t + 1][j]]) + cost_to_go[t + 1][j];
                cost_to_go[t][i] = std::min(cost_to_go[t][i], c);
            }
        }
    }

    // Nodes are enumerated in lexicographic order, so scanning for the first
    // optimal successor yields the lexicographically smallest path.
    std::vector<Assignment> path;
    std::size_t at = static_cast<std::size_t>(
        std::min_element(cost_to_go[0].begin(), cost_to_go[0].end()) - cost_to_go[0].begin());
    path.push_back(nodes[layers[0][at]]);
    for (int t = 0; t + 1 < num_slices; ++t) {
        const Assignment &from = nodes[layers[t][at]];
        for (std::size_t j = 0; j < layers[t + 1].size(); ++j) {
            if (nonlocal_moves(from, nodes[layers[t + 1][j]]) + cost_to_go[t + 1][j] == cost_to_go[t][at]) {
                at = j;
                break;
            }
        }
        path.push_back(nodes[layers[t + 1][at]]);
    }
    return make_trajectory(std::move(path));
}

}  // namespace qpart
