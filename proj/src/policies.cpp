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

#include "qpart/policies.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <tuple>

namespace qpart {

int random_policy(const ActionMask &mask, Rng &rng) {
    const auto allowed = static_cast<std::uint64_t>(mask.size() - std::count(mask.begin(), mask.end(), std::uint8_t{0}));
    if (allowed == 0) {
        throw EnvError("random policy: every action is masked");
    }
    std::uint64_t pick = rng.below(allowed);
    for (int i = 0;; ++i) {
        if (mask[i] && pick-- == 0) {
            return i;
        }
    }
}

int greedy_policy(const Environment &env, const ActionMask &mask) {
    const int n = env.num_qubits();
    const int advance = advance_action(n);
    if (mask[advance] && env.current_valid()) {
        return advance;
    }
    const Assignment &cur = env.current();
    const Assignment &prev = env.previous();
    const InteractionGraph &graph = env.graph();
    const TieredWeight base = cut_weight(graph, cur);

    using Key = std::tuple<std::int64_t, double, int>;
    std::optional<Key> best;
    int best_action = -1;
    int index = 0;
    for (Qubit a = 0; a < n; ++a) {
        for (Qubit b = a; b < n; ++b, ++index) {
            if (!mask[index]) {
                continue;
            }
            TieredWeight after = base + swap_cut_delta(graph, cur, a, b);
            // Movement change only involves a and b.
            int moved_delta = 0;
            if (a != b) {
                moved_delta = (cur.core(b) != prev.core(a)) - (cur.core(a) != prev.core(a)) +
                              (cur.core(a) != prev.core(b)) - (cur.core(b) != prev.core(b));
            }
            Key key{after.current, after.future, moved_delta};
            if (!best || key < *best) {
                best = key;
                best_action = index;
            }
        }
    }
    if (best_action < 0) {
        if (mask[advance]) {
            return advance;
        }
        throw EnvError("greedy policy: every action is masked");
    }
    return best_action;
}

PolicyKind parse_policy_kind(std::string_view name) {
    if (name == "random") {
        return PolicyKind::random;
    }
    if (name == "greedy") {
        return PolicyKind::greedy;
    }
    throw EnvError("unknown policy '" + std::string(name) + "'");
}

EpisodeStats run_episode(Environment &env, const PolicyFn &policy) {
    env.reset();
    ActionMask mask;
    while (!env.done()) {
        compute_mask_into(env, env.config().mask_mode, mask);
        env.apply(policy(env, mask));
    }
    EpisodeStats stats;
    stats.total_moves = env.total_moves();
    stats.avg_moves = env.avg_moves();
    stats.episode_length = env.episode_length();
    stats.total_reward = env.total_reward();
    stats.completed = env.terminated();
    stats.committed = env.committed();
    return stats;
}

EpisodeStats run_episode(const EnvConfig &config, PolicyKind kind, std::uint64_t seed) {
    Environment env(config);
    if (kind == PolicyKind::greedy) {
        return run_episode(env, [](const Environment &e, const ActionMask &m) { return greedy_policy(e, m); });
    }
    Rng rng(seed);
    return run_episode(env, [&rng](const Environment &, const ActionMask &m) { return random_policy(m, rng); });
}

}  // namespace qpart
