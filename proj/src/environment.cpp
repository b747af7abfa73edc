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

#include "qpart/environment.hpp"

#include <algorithm>
#include <string>

#include "qpart/partition.hpp"

namespace qpart {

std::string_view mask_mode_name(MaskMode mode) {
    switch (mode) {
        case MaskMode::none:
            return "none";
        case MaskMode::soft:
            return "soft";
        case MaskMode::hard:
            return "hard";
    }
    return "unknown";
}

MaskMode parse_mask_mode(std::string_view name) {
    if (name == "none") {
        return MaskMode::none;
    }
    if (name == "soft") {
        return MaskMode::soft;
    }
    if (name == "hard") {
        return MaskMode::hard;
    }
    throw EnvError("unknown mask mode '" + std::string(name) + "'");
}

int num_actions(int num_qubits) { return num_qubits * (num_qubits + 1) / 2 + 1; }

int advance_action(int num_qubits) { return num_actions(num_qubits) - 1; }

int action_index(Qubit a, Qubit b, int num_qubits) {
    if (a > b) {
        std::swap(a, b);
    }
    if (a < 0 || b >= num_qubits) {
        throw EnvError("qubit pair (" + std::to_string(a) + ", " + std::to_string(b) + ") out of range");
    }
    return a * num_qubits - a * (a - 1) / 2 + (b - a);
}

Action decode_action(int index, int num_qubits) {
    if (index < 0 || index >= num_actions(num_qubits)) {
        throw EnvError("action out of range: " + std::to_string(index));
    }
    if (index == advance_action(num_qubits)) {
        return Action{Action::Kind::advance, 0, 0};
    }
    // Row a holds num_qubits - a entries.
    Qubit a = 0;
    int row_start = 0;
    while (index >= row_start + (num_qubits - a)) {
        row_start += num_qubits - a;
        ++a;
    }
    return Action{Action::Kind::swap, a, a + (index - row_start)};
}

int observation_size(int num_qubits, int num_cores) {
    return num_qubits * (num_qubits - 1) / 2 + 2 * num_qubits * num_cores + 1;
}

Environment::Environment(EnvConfig config) : config_(std::move(config)) {
    if (config_.budget_per_slice < 0) {
        throw EnvError("budget_per_slice must be >= 1 (or 0 for the default)");
    }
    if (!(config_.decay > 0.0 && config_.decay < 1.0)) {
        throw EnvError("decay must lie in (0, 1)");
    }
    if (config_.horizon < 0) {
        throw EnvError("horizon must be >= 0");
    }
    if (config_.reward.move_penalty < 0.0 || config_.reward.final_scale < 0.0) {
        throw EnvError("move_penalty and final_scale must be >= 0");
    }
    load_circuit(config_.seed);
}

void Environment::load_circuit(std::optional<std::uint64_t> seed) {
    std::vector<Timeslice> slices;
    int num_qubits = 0;
    try {
        if (const auto *circuit = std::get_if<Circuit>(&config_.source)) {
            circuit->validate();
            num_qubits = circuit->num_qubits;
            slices = timeslice(*circuit);
        } else if (const auto *inline_slices = std::get_if<InlineSlices>(&config_.source)) {
            num_qubits = inline_slices->num_qubits;
            slices = inline_slices->slices;
            for (int t = 0; t < static_cast<int>(slices.size()); ++t) {
                slices[t].index = t;
                std::vector<char> seen(static_cast<std::size_t>(std::max(num_qubits, 0)), 0);
                for (const Gate &g : slices[t].pairs) {
                    for (Qubit q : {g.a, g.b}) {
                        if (q < 0 || q >= num_qubits) {
                            throw EnvError("slice " + std::to_string(t) + ": qubit " + std::to_string(q) +
                                           " out of range");
                        }
                        if (seen[q]) {
                            throw EnvError("slice " + std::to_string(t) + ": qubit " + std::to_string(q) +
                                           " appears in two pairs");
                        }
                        seen[q] = 1;
                    }
                }
            }
        } else {
            GeneratorSpec spec = std::get<GeneratorSpec>(config_.source);
            if (seed) {
                spec.seed = *seed;
            }
            Circuit circuit = generate(spec);
            num_qubits = circuit.num_qubits;
            slices = timeslice(circuit);
        }
        if (slices.empty()) {
            throw EnvError("empty circuit: no two-qubit gates to partition");
        }
        cores_ = CoreConfig::for_qubits(num_qubits, config_.num_cores);
        check_feasible(slices, cores_);
    } catch (const CircuitError &e) {
        throw EnvError(e.what());
    } catch (const PartitionError &e) {
        throw EnvError(e.what());
    }

    num_qubits_ = num_qubits;
    slices_ = std::move(slices);
    budget_ = config_.budget_per_slice > 0 ? config_.budget_per_slice : num_qubits_;
    graphs_ = lookahead_graphs(slices_, num_qubits_, config_.decay, config_.horizon);
    partners_.clear();
    for (const Timeslice &s : slices_) {
        partners_.push_back(slice_partners(s, num_qubits_));
    }
    // Any future-tier value is below sum_{d=1..H} decay^d, so shifting current
    // edges by 1 + that sum keeps the tiers apart in a single channel.
    const int reach = std::min<long long>(config_.horizon, static_cast<long long>(slices_.size()) - 1);
    current_tier_cap_ = 1.0;
    double w = 1.0;
    for (int d = 1; d <= reach; ++d) {
        w *= config_.decay;
        current_tier_cap_ += w;
    }
}

ResetResult Environment::reset(std::optional<std::uint64_t> seed) {
    if (!seed) {
        seed = config_.seed;
    }
    if (seed && std::holds_alternative<GeneratorSpec>(config_.source)) {
        load_circuit(seed);
    }
    started_ = true;
    t_ = 0;
    current_ = initial_assignment(num_qubits_, cores_);
    previous_ = current_;
    actions_used_ = 0;
    episode_length_ = 0;
    total_reward_ = 0.0;
    done_ = false;
    terminated_ = false;
    truncated_ = false;
    committed_.clear();
    committed_moves_.clear();
    return ResetResult{observe(), mask()};
}

bool Environment::current_valid() const { return done_ ? terminated_ : is_valid(slices_[t_], current_); }

long long Environment::total_moves() const {
    long long total = 0;
    for (int m : committed_moves_) {
        total += m;
    }
    return total;
}

double Environment::avg_moves() const {
    if (committed_.size() < 2) {
        return 0.0;
    }
    return static_cast<double>(total_moves()) / static_cast<double>(committed_.size() - 1);
}

namespace {

bool swap_allowed(const Environment &env, MaskMode mode, Qubit a, Qubit b) {
    if (mode == MaskMode::none) {
        return true;
    }
    const Assignment &cur = env.current();
    if (a == b || cur.core(a) == cur.core(b)) {
        return false;
    }
    if (mode == MaskMode::soft) {
        return true;
    }
    const auto &partner = env.partners();
    auto moves_into_partner_core = [&](Qubit mover, Qubit other) {
        Qubit p = partner[mover];
        return p >= 0 && cur.core(mover) != cur.core(p) && cur.core(other) == cur.core(p);
    };
    return moves_into_partner_core(a, b) || moves_into_partner_core(b, a);
}

bool action_allowed(const Environment &env, MaskMode mode, const Action &action) {
    if (env.done()) {
        return false;
    }
    if (action.kind == Action::Kind::advance) {
        return mode == MaskMode::none || env.current_valid();
    }
    return swap_allowed(env, mode, action.a, action.b);
}

}  // namespace

void compute_mask_into(const Environment &env, MaskMode mode, ActionMask &mask) {
    const int n = env.num_qubits();
    mask.assign(static_cast<std::size_t>(num_actions(n)), 0);
    if (env.done()) {
        return;
    }
    const bool valid = env.current_valid();
    const std::size_t advance = mask.size() - 1;
    if (mode == MaskMode::none) {
        mask.assign(mask.size(), 1);
        return;
    }
    mask[advance] = valid ? 1 : 0;
    const auto cores = env.current().cores();
    if (mode == MaskMode::soft) {
        std::size_t index = 0;
        for (Qubit a = 0; a < n; ++a) {
            ++index;  // (a, a)
            for (Qubit b = a + 1; b < n; ++b, ++index) {
                mask[index] = cores[a] != cores[b] ? 1 : 0;
            }
        }
        return;
    }
    // Hard: a valid slice has no misplaced qubits, so only ADVANCE remains.
    if (valid) {
        return;
    }
    for (Qubit a = 0; a < n; ++a) {
        for (Qubit b = a + 1; b < n; ++b) {
            if (swap_allowed(env, mode, a, b)) {
                mask[static_cast<std::size_t>(action_index(a, b, n))] = 1;
            }
        }
    }
}

ActionMask compute_mask(const Environment &env, MaskMode mode) {
    ActionMask mask;
    compute_mask_into(env, mode, mask);
    return mask;
}

ActionMask Environment::mask() const { return compute_mask(*this, config_.mask_mode); }

ActionMask Environment::mask(MaskMode mode) const { return compute_mask(*this, mode); }

Observation Environment::observe() const {
    if (!started_) {
        throw EnvError("reset() must be called before observe()");
    }
    Observation obs;
    obs.reserve(static_cast<std::size_t>(observation_size()));
    const int n = num_qubits_;
    const int k = cores_.num_cores;
    const bool live = !done_ || t_ < num_slices();
    for (Qubit a = 0; a < n; ++a) {
        for (Qubit b = a + 1; b < n; ++b) {
            double v = 0.0;
            if (live) {
                const TieredWeight &w = graphs_[t_].weight(a, b);
                v = w.future + static_cast<double>(w.current) * current_tier_cap_;
            }
            obs.push_back(v);
        }
    }
    for (const Assignment *assignment : {&current_, &previous_}) {
        for (Qubit q = 0; q < n; ++q) {
            for (int c = 0; c < k; ++c) {
                obs.push_back(assignment->core(q) == c ? 1.0 : 0.0);
            }
        }
    }
    obs.push_back(live ? (is_valid(slices_[t_], current_) ? 1.0 : 0.0) : 1.0);
    return obs;
}

StepOutcome Environment::apply(int action) {
    if (!started_) {
        throw EnvError("reset() must be called before step()");
    }
    if (done_) {
        throw EnvError("episode is finished; call reset()");
    }
    if (action < 0 || action >= num_actions()) {
        throw EnvError("action out of range: " + std::to_string(action) + " (valid range 0.." +
                       std::to_string(num_actions() - 1) + ")");
    }
    const Action act = decode_action(action, num_qubits_);
    if (config_.mask_mode != MaskMode::none && !action_allowed(*this, config_.mask_mode, act)) {
        throw EnvError("action " + std::to_string(action) + " is masked under " +
                       std::string(mask_mode_name(config_.mask_mode)) + " mask");
    }

    const RewardParams &r = config_.reward;
    StepOutcome out;
    out.info.slice = t_;
    ++episode_length_;

    bool committed = false;
    if (act.kind == Action::Kind::swap) {
        current_.swap(act.a, act.b);
        out.reward = -r.step_penalty;
        ++actions_used_;
    } else if (is_valid(slices_[t_], current_)) {
        const int moves = t_ == 0 ? 0 : nonlocal_moves(previous_, current_);
        committed_.push_back(current_);
        committed_moves_.push_back(moves);
        out.info.moves = moves;
        out.reward = r.valid_bonus - r.move_penalty * moves;
        previous_ = current_;
        ++t_;
        actions_used_ = 0;
        committed = true;
        if (t_ == num_slices()) {
            out.reward -= r.final_scale * avg_moves();
            out.terminated = true;
            terminated_ = true;
            done_ = true;
        }
    } else {
        out.reward = -r.step_penalty;
        ++actions_used_;
    }
    if (!committed && actions_used_ >= budget_) {
        out.reward -= r.fail_penalty;
        out.truncated = true;
        truncated_ = true;
        done_ = true;
    }

    total_reward_ += out.reward;
    out.info.actions_used = actions_used_;
    out.info.episode_length = episode_length_;
    return out;
}

StepResult Environment::step(int action) {
    StepOutcome outcome = apply(action);
    return StepResult{observe(), outcome.reward, outcome.terminated, outcome.truncated, mask(), outcome.info};
}

}  // namespace qpart
