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

// JSON encodings shared by the CLI, the environment server and the Python
// module.
//
// Environment config:
//   {
//     "circuit":   "qubits 4\ncx 0 1\n..."        gate-list text, or
//                  {"qubits": 4, "gates": [[0, 1], ...]},
//     "slices":    {"qubits": 4, "slices": [[[0, 1]], [[0, 2]]]},
//     "generator": "random:qubits=16,slices=50"   or an object with the same keys,
//     "cores": 2, "mask": "none|soft|hard", "budget": 0,
//     "decay": 0.5, "horizon": null | int,
//     "reward": {"valid_bonus": 1.0, "move_penalty": 0.1, "step_penalty": 0.01,
//                "fail_penalty": 10.0, "final_scale": 1.0},
//     "seed": int
//   }
// Exactly one of "circuit", "slices" and "generator" must be present.

#include <json.hpp>

#include "qpart/bench.hpp"
#include "qpart/circuit.hpp"
#include "qpart/environment.hpp"
#include "qpart/partition.hpp"

namespace qpart {

using json = nlohmann::json;

/// Parse errors of JSON documents that are well-formed but carry bad fields.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

GeneratorSpec generator_spec_from_json(const json &j);
json generator_spec_to_json(const GeneratorSpec &spec);

EnvConfig env_config_from_json(const json &j);
json env_config_to_json(const EnvConfig &config);

BenchSpec bench_spec_from_json(const json &j);
json bench_spec_to_json(const BenchSpec &spec);

json trajectory_to_json(const Trajectory &trajectory);

}  // namespace qpart
