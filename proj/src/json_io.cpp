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

#include "qpart/json_io.hpp"

#include <initializer_list>
#include <string>

namespace qpart {

namespace {

void require_object(const json &j, const char *what) {
    if (!j.is_object()) {
        throw ConfigError(std::string(what) + " must be a JSON object");
    }
}

void reject_unknown(const json &j, std::initializer_list<const char *> known, const char *what) {
    for (const auto &item : j.items()) {
        bool ok = false;
        for (const char *k : known) {
            ok = ok || item.key() == k;
        }
        if (!ok) {
            throw ConfigError(std::string("unknown key '") + item.key() + "' in " + what);
        }
    }
}

template <typename T>
T get_field(const json &j, const char *key, T fallback) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) {
        return fallback;
    }
    try {
        return it->get<T>();
    } catch (const json::exception &) {
        throw ConfigError(std::string("field '") + key + "' has the wrong type");
    }
}

int get_horizon(const json &j, int fallback) {
    auto it = j.find("horizon");
    if (it == j.end() || it->is_null()) {
        return fallback;
    }
    if (!it->is_number_integer()) {
        throw ConfigError("field 'horizon' must be an integer or null");
    }
    return it->get<int>();
}

json horizon_to_json(int horizon) { return horizon == kFullHorizon ? json(nullptr) : json(horizon); }

RewardParams reward_from_json(const json &j) {
    require_object(j, "reward");
    reject_unknown(j, {"valid_bonus", "move_penalty", "step_penalty", "fail_penalty", "final_scale"}, "reward");
    RewardParams r;
    r.valid_bonus = get_field(j, "valid_bonus", r.valid_bonus);
    r.move_penalty = get_field(j, "move_penalty", r.move_penalty);
    r.step_penalty = get_field(j, "step_penalty", r.step_penalty);
    r.fail_penalty = get_field(j, "fail_penalty", r.fail_penalty);
    r.final_scale = get_field(j, "final_scale", r.final_scale);
    return r;
}

json reward_to_json(const RewardParams &r) {
    return json{{"valid_bonus", r.valid_bonus},
                {"move_penalty", r.move_penalty},
                {"step_penalty", r.step_penalty},
                {"fail_penalty", r.fail_penalty},
                {"final_scale", r.final_scale}};
}

std::vector<Gate> gates_from_json(const json &j, const char *what) {
    if (!j.is_array()) {
        throw ConfigError(std::string(what) + " must be an array of [a, b] pairs");
    }
    std::vector<Gate> gates;
    for (const json &g : j) {
        if (!g.is_array() || g.size() != 2 || !g[0].is_number_integer() || !g[1].is_number_integer()) {
            throw ConfigError(std::string(what) + " must be an array of [a, b] pairs");
        }
        gates.push_back(Gate{g[0].get<int>(), g[1].get<int>()});
    }
    return gates;
}

json gates_to_json(const std::vector<Gate> &gates) {
    json out = json::array();
    for (const Gate &g : gates) {
        out.push_back(json::array({g.a, g.b}));
    }
    return out;
}

}  // namespace

GeneratorSpec generator_spec_from_json(const json &j) {
    if (j.is_string()) {
        return parse_generator_spec(j.get<std::string>());
    }
    require_object(j, "generator");
    reject_unknown(j, {"family", "qubits", "slices", "density", "layers", "degree", "bits", "seed"}, "generator");
    GeneratorSpec spec;
    spec.family = parse_family(get_field<std::string>(j, "family", "random"));
    spec.qubits = get_field(j, "qubits", spec.qubits);
    spec.slices = get_field(j, "slices", spec.slices);
    spec.density = get_field(j, "density", spec.density);
    spec.layers = get_field(j, "layers", spec.layers);
    spec.degree = get_field(j, "degree", spec.degree);
    spec.bits = get_field(j, "bits", spec.bits);
    spec.seed = get_field(j, "seed", spec.seed);
    return spec;
}

json generator_spec_to_json(const GeneratorSpec &spec) {
    return json{{"family", std::string(family_name(spec.family))},
                {"qubits", spec.qubits},
                {"slices", spec.slices},
                {"density", spec.density},
                {"layers", spec.layers},
                {"degree", spec.degree},
                {"bits", spec.bits},
                {"seed", spec.seed}};
}

EnvConfig env_config_from_json(const json &j) {
    require_object(j, "environment config");
    reject_unknown(j,
                   {"circuit", "slices", "generator", "cores", "mask", "budget", "decay", "horizon", "reward",
                    "seed"},
                   "environment config");
    const int sources = static_cast<int>(j.contains("circuit")) + static_cast<int>(j.contains("slices")) +
                        static_cast<int>(j.contains("generator"));
    if (sources != 1) {
        throw ConfigError("environment config needs exactly one of 'circuit', 'slices' or 'generator'");
    }

    EnvConfig config;
    if (auto it = j.find("circuit"); it != j.end()) {
        if (it->is_string()) {
            config.source = parse_circuit(it->get<std::string>());
        } else {
            require_object(*it, "circuit");
            reject_unknown(*it, {"qubits", "gates", "name"}, "circuit");
            Circuit c;
            c.num_qubits = get_field(*it, "qubits", 0);
            c.gates = gates_from_json(it->value("gates", json::array()), "circuit.gates");
            c.name = get_field<std::string>(*it, "name", "");
            c.validate();
            config.source = std::move(c);
        }
    } else if (auto it = j.find("slices"); it != j.end()) {
        require_object(*it, "slices");
        reject_unknown(*it, {"qubits", "slices"}, "slices");
        InlineSlices s;
        s.num_qubits = get_field(*it, "qubits", 0);
        const json &list = it->value("slices", json::array());
        if (!list.is_array()) {
            throw ConfigError("slices.slices must be an array");
        }
        for (std::size_t t = 0; t < list.size(); ++t) {
            s.slices.push_back(Timeslice{static_cast<int>(t), gates_from_json(list[t], "slices.slices[t]")});
        }
        config.source = std::move(s);
    } else {
        config.source = generator_spec_from_json(j.at("generator"));
    }

    config.num_cores = get_field(j, "cores", config.num_cores);
    config.mask_mode = parse_mask_mode(get_field<std::string>(j, "mask", "soft"));
    config.budget_per_slice = get_field(j, "budget", config.budget_per_slice);
    config.decay = get_field(j, "decay", config.decay);
    config.horizon = get_horizon(j, config.horizon);
    if (auto it = j.find("reward"); it != j.end()) {
        config.reward = reward_from_json(*it);
    }
    if (auto it = j.find("seed"); it != j.end() && !it->is_null()) {
        config.seed = get_field<std::uint64_t>(j, "seed", 0);
    }
    return config;
}

json env_config_to_json(const EnvConfig &config) {
    json j;
    if (const auto *c = std::get_if<Circuit>(&config.source)) {
        j["circuit"] = json{{"qubits", c->num_qubits}, {"gates", gates_to_json(c->gates)}, {"name", c->name}};
    } else if (const auto *s = std::get_if<InlineSlices>(&config.source)) {
        json list = json::array();
        for (const Timeslice &t : s->slices) {
            list.push_back(gates_to_json(t.pairs));
        }
        j["slices"] = json{{"qubits", s->num_qubits}, {"slices", std::move(list)}};
    } else {
        j["generator"] = generator_spec_to_json(std::get<GeneratorSpec>(config.source));
    }
    j["cores"] = config.num_cores;
    j["mask"] = std::string(mask_mode_name(config.mask_mode));
    j["budget"] = config.budget_per_slice;
    j["decay"] = config.decay;
    j["horizon"] = horizon_to_json(config.horizon);
    j["reward"] = reward_to_json(config.reward);
    j["seed"] = config.seed ? json(*config.seed) : json(nullptr);
    return j;
}

BenchSpec bench_spec_from_json(const json &j) {
    require_object(j, "bench spec");
    reject_unknown(j,
                   {"generator", "qubits", "cores", "methods", "trials", "seed", "decay", "horizon", "max_passes",
                    "budget", "reward", "jobs", "timing", "remote_csv"},
                   "bench spec");
    BenchSpec spec;
    if (auto it = j.find("generator"); it != j.end()) {
        spec.circuit = generator_spec_from_json(*it);
    }
    if (auto it = j.find("qubits"); it != j.end()) {
        if (it->is_number_integer()) {
            spec.qubit_counts = {it->get<int>()};
        } else {
            spec.qubit_counts = get_field<std::vector<int>>(j, "qubits", {});
        }
    }
    spec.num_cores = get_field(j, "cores", spec.num_cores);
    if (auto it = j.find("methods"); it != j.end()) {
        spec.methods.clear();
        for (const auto &name : get_field<std::vector<std::string>>(j, "methods", {})) {
            spec.methods.push_back(parse_method(name));
        }
    }
    spec.trials = get_field(j, "trials", spec.trials);
    spec.seed = get_field(j, "seed", spec.seed);
    spec.decay = get_field(j, "decay", spec.decay);
    spec.horizon = get_horizon(j, spec.horizon);
    spec.max_passes = get_field(j, "max_passes", spec.max_passes);
    spec.budget_per_slice = get_field(j, "budget", spec.budget_per_slice);
    if (auto it = j.find("reward"); it != j.end()) {
        spec.reward = reward_from_json(*it);
    }
    spec.jobs = get_field(j, "jobs", spec.jobs);
    spec.timing = get_field(j, "timing", spec.timing);
    spec.remote_csv = get_field<std::string>(j, "remote_csv", "");
    return spec;
}

json bench_spec_to_json(const BenchSpec &spec) {
    json methods = json::array();
    for (Method m : spec.methods) {
        methods.push_back(std::string(method_name(m)));
    }
    return json{{"generator", generator_spec_to_json(spec.circuit)},
                {"qubits", spec.qubit_counts},
                {"cores", spec.num_cores},
                {"methods", std::move(methods)},
                {"trials", spec.trials},
                {"seed", spec.seed},
                {"decay", spec.decay},
                {"horizon", horizon_to_json(spec.horizon)},
                {"max_passes", spec.max_passes},
                {"budget", spec.budget_per_slice},
                {"reward", reward_to_json(spec.reward)},
                {"jobs", spec.jobs},
                {"timing", spec.timing},
                {"remote_csv", spec.remote_csv}};
}

json trajectory_to_json(const Trajectory &trajectory) {
    json assignments = json::array();
    for (const Assignment &a : trajectory.assignments) {
        assignments.push_back(std::vector<int>(a.cores().begin(), a.cores().end()));
    }
    return json{{"assignments", std::move(assignments)},
                {"moves_per_step", trajectory.moves_per_step},
                {"total_moves", trajectory.total_moves},
                {"avg_moves", trajectory.avg_moves}};
}

}  // namespace qpart
