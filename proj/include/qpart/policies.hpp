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
#include <functional>
#include <string_view>
#include <vector>

#include "qpart/environment.hpp"
#include "qpart/rng.hpp"

namespace qpart {

struct EpisodeStats {
    long long total_moves = 0;
    double avg_moves = 0.0;
    int episode_length = 0;
    double total_reward = 0.0;
    bool completed = false;  // every slice committed
    std::vector<Assignment> committed;
};

/// Uniform draw over allowed actions. Throws EnvError if none is allowed.
int random_policy(const ActionMask &mask, Rng &rng);

/// ADVANCE when allowed and the slice is valid; otherwise the allowed swap
/// giving the smallest (current cut, future cut, moves from the previous
/// slice) afterwards, lowest index on ties.
int greedy_policy(const Environment &env, const ActionMask &mask);

enum class PolicyKind { random, greedy };

PolicyKind parse_policy_kind(std::string_view name);

using PolicyFn = std::function<int(const Environment &, const ActionMask &)>;

/// Drives reset/step until the episode terminates or is truncated.
EpisodeStats run_episode(Environment &env, const PolicyFn &policy);
EpisodeStats run_episode(const EnvConfig &config, PolicyKind kind, std::uint64_t seed);

}  // namespace qpart
