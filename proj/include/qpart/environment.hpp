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
#include <optional>
#include <stdexcept>
#include <string_view>
#include <variant>
#include <vector>

#include "qpart/assignment.hpp"
#include "qpart/circuit.hpp"
#include "qpart/interaction.hpp"

namespace qpart {

class EnvError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class MaskMode { none, soft, hard };

std::string_view mask_mode_name(MaskMode mode);
MaskMode parse_mask_mode(std::string_view name);

struct RewardParams {
    double valid_bonus = 1.0;
    double move_penalty = 0.1;  // per qubit moved when a slice is committed
    double step_penalty = 0.01;
    double fail_penalty = 10.0;
    double final_scale = 1.0;  // weight of the average-movement term at the end
    bool operator==(const RewardParams &) const = default;
};

/// Pre-sliced input, for slice layouts that ASAP layering would merge.
struct InlineSlices {
    int num_qubits = 0;
    std::vector<Timeslice> slices;
    bool operator==(const InlineSlices &) const = default;
};

using CircuitSource = std::variant<Circuit, InlineSlices, GeneratorSpec>;

struct EnvConfig {
    CircuitSource source;
    int num_cores = 2;
    MaskMode mask_mode = MaskMode::soft;
    int budget_per_slice = 0;  // 0 selects the qubit count
    double decay = 0.5;
    int horizon = kFullHorizon;
    RewardParams reward;
    // Circuit seed for generator sources; overrides the generator's own seed.
    std::optional<std::uint64_t> seed;
};

/// Swap of two qubits (a == b allowed) or the ADVANCE action that commits
/// the current slice.
struct Action {
    enum class Kind { swap, advance };
    Kind kind = Kind::advance;
    Qubit a = 0;
    Qubit b = 0;
    bool operator==(const Action &) const = default;
};

/// Q(Q+1)/2 unordered pairs a <= b in row-major order, then ADVANCE.
int num_actions(int num_qubits);
int action_index(Qubit a, Qubit b, int num_qubits);
int advance_action(int num_qubits);
Action decode_action(int index, int num_qubits);

/// Q(Q-1)/2 lookahead weights + 2Qk one-hot entries + validity bit.
int observation_size(int num_qubits, int num_cores);

using Observation = std::vector<double>;
/// One byte per action, non-zero when allowed.
using ActionMask = std::vector<std::uint8_t>;

struct StepInfo {
    int slice = 0;         // slice index the action applied to
    int moves = 0;         // qubits moved by this action's commit, 0 otherwise
    int actions_used = 0;  // actions spent on the current slice after this step
    int episode_length = 0;
    bool operator==(const StepInfo &) const = default;
};

struct StepResult {
    Observation observation;
    double reward = 0.0;
    bool terminated = false;
    bool truncated = false;
    ActionMask mask;
    StepInfo info;
};

/// Reward and flags of one action, without the observation encoding.
struct StepOutcome {
    double reward = 0.0;
    bool terminated = false;
    bool truncated = false;
    StepInfo info;
};

struct ResetResult {
    Observation observation;
    ActionMask mask;
};

/// Sequential slice-by-slice partitioning environment.
///
/// Each slice starts from the assignment committed for the previous slice.
/// Swaps cost `step_penalty`; committing a valid slice pays
/// `valid_bonus - move_penalty * moves`, where the first slice's moves are
/// free. The final commit additionally pays `-final_scale * avg_moves`.
/// Spending `budget_per_slice` non-committing actions on one slice truncates
/// the episode with `-fail_penalty`.
class Environment {
  public:
    /// Throws EnvError for invalid configurations (empty circuit, indivisible
    /// qubit count, slices that no balanced assignment satisfies).
    explicit Environment(EnvConfig config);

    /// Starts a new episode. A seed regenerates generator-backed circuits;
    /// without one the config seed is used.
    ResetResult reset(std::optional<std::uint64_t> seed = std::nullopt);
    StepResult step(int action);

    /// step() without observation and mask encoding.
    StepOutcome apply(int action);

    Observation observe() const;
    ActionMask mask() const;
    ActionMask mask(MaskMode mode) const;

    const EnvConfig &config() const { return config_; }
    int num_qubits() const { return num_qubits_; }
    int num_cores() const { return cores_.num_cores; }
    const CoreConfig &cores() const { return cores_; }
    int num_actions() const { return qpart::num_actions(num_qubits_); }
    int observation_size() const { return qpart::observation_size(num_qubits_, cores_.num_cores); }
    int budget() const { return budget_; }

    const std::vector<Timeslice> &slices() const { return slices_; }
    int num_slices() const { return static_cast<int>(slices_.size()); }
    int t() const { return t_; }
    bool done() const { return done_; }
    bool terminated() const { return terminated_; }
    bool truncated() const { return truncated_; }
    const Assignment &current() const { return current_; }
    const Assignment &previous() const { return previous_; }
    int actions_used() const { return actions_used_; }
    int episode_length() const { return episode_length_; }
    double total_reward() const { return total_reward_; }

    /// Graph and partner table of the slice being worked on. Only valid while
    /// !done().
    const InteractionGraph &graph() const { return graphs_[t_]; }
    const std::vector<Qubit> &partners() const { return partners_[t_]; }
    bool current_valid() const;

    /// Assignments committed so far and the moves of each commit.
    const std::vector<Assignment> &committed() const { return committed_; }
    const std::vector<int> &committed_moves() const { return committed_moves_; }
    long long total_moves() const;
    double avg_moves() const;

  private:
    void load_circuit(std::optional<std::uint64_t> seed);

    EnvConfig config_;
    int num_qubits_ = 0;
    CoreConfig cores_;
    int budget_ = 0;
    std::vector<Timeslice> slices_;
    std::vector<InteractionGraph> graphs_;
    std::vector<std::vector<Qubit>> partners_;
    double current_tier_cap_ = 1.0;

    int t_ = 0;
    Assignment current_;
    Assignment previous_;
    int actions_used_ = 0;
    int episode_length_ = 0;
    double total_reward_ = 0.0;
    bool started_ = false;
    bool done_ = true;
    bool terminated_ = false;
    bool truncated_ = false;
    std::vector<Assignment> committed_;
    std::vector<int> committed_moves_;
};

/// Allowed actions of the environment's current state under `mode`:
///   none: everything;
///   soft: swaps of two distinct qubits on different cores, ADVANCE only when
///         the slice is valid;
///   hard: soft swaps that move a misplaced qubit into its partner's core,
///         ADVANCE only when valid (and then nothing else).
/// A finished episode has no allowed actions.
ActionMask compute_mask(const Environment &env, MaskMode mode);
void compute_mask_into(const Environment &env, MaskMode mode, ActionMask &mask);

}  // namespace qpart
