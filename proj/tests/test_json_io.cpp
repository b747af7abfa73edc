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

#include <gtest/gtest.h>

#include "qpart/json_io.hpp"

namespace qpart {
namespace {

TEST(EnvConfigJson, Sources) {
    EnvConfig a = env_config_from_json(json{{"circuit", "qubits 4\ncx 0 1\ncx 2 3\n"}});
    EXPECT_EQ(std::get<Circuit>(a.source).gates.size(), 2u);
    EnvConfig b = env_config_from_json(json{{"circuit", {{"qubits", 4}, {"gates", {{0, 1}, {1, 2}}}}}});
    EXPECT_EQ(std::get<Circuit>(b.source).gates, (std::vector<Gate>{{0, 1}, {1, 2}}));
    EnvConfig c = env_config_from_json(json{{"slices", {{"qubits", 4}, {"slices", {{{0, 1}}, json::array()}}}}});
    EXPECT_EQ(std::get<InlineSlices>(c.source).slices.size(), 2u);
    EnvConfig d = env_config_from_json(json{{"generator", "qaoa:qubits=8"}, {"seed", 3}});
    EXPECT_EQ(std::get<GeneratorSpec>(d.source).family, CircuitFamily::qaoa);
    EXPECT_EQ(d.seed, std::optional<std::uint64_t>(3));
    EnvConfig e = env_config_from_json(json{{"generator", {{"family", "cuccaro"}, {"bits", 2}}}});
    EXPECT_EQ(std::get<GeneratorSpec>(e.source).bits, 2);
}

TEST(EnvConfigJson, FieldsAndRoundTrip) {
    json j = {{"generator", "random:qubits=8,slices=5"},
              {"cores", 4},
              {"mask", "hard"},
              {"budget", 17},
              {"decay", 0.25},
              {"horizon", 3},
              {"reward", {{"fail_penalty", 2.5}}},
              {"seed", 11}};
    EnvConfig c = env_config_from_json(j);
    EXPECT_EQ(c.num_cores, 4);
    EXPECT_EQ(c.mask_mode, MaskMode::hard);
    EXPECT_EQ(c.budget_per_slice, 17);
    EXPECT_EQ(c.horizon, 3);
    EXPECT_DOUBLE_EQ(c.reward.fail_penalty, 2.5);
    EXPECT_DOUBLE_EQ(c.reward.valid_bonus, 1.0);
    EXPECT_EQ(env_config_to_json(env_config_from_json(env_config_to_json(c))), env_config_to_json(c));
    EXPECT_EQ(env_config_from_json(json{{"generator", "random"}, {"horizon", nullptr}}).horizon, kFullHorizon);
}

TEST(EnvConfigJson, Errors) {
    EXPECT_THROW(env_config_from_json(json{{"cores", 2}}), ConfigError);
    EXPECT_THROW(env_config_from_json(json{{"generator", "random"}, {"circuit", "qubits 2\ncx 0 1"}}), ConfigError);
    EXPECT_THROW(env_config_from_json(json{{"generator", "random"}, {"core", 2}}), ConfigError);
    EXPECT_THROW(env_config_from_json(json{{"generator", "random"}, {"cores", "two"}}), ConfigError);
    EXPECT_THROW(env_config_from_json(json{{"generator", "random"}, {"horizon", 1.5}}), ConfigError);
    EXPECT_THROW(env_config_from_json(json{{"generator", "random"}, {"reward", {{"bonus", 1}}}}), ConfigError);
    EXPECT_THROW(env_config_from_json(json{{"generator", "random"}, {"mask", "medium"}}), EnvError);
    EXPECT_THROW(env_config_from_json(json{{"slices", {{"qubits", 2}, {"slices", {{{0}}}}}}}), ConfigError);
    EXPECT_THROW(env_config_from_json(json{{"circuit", {{"qubits", 2}, {"gates", {{0, 3}}}}}}), CircuitError);
    EXPECT_THROW(env_config_from_json(json::array()), ConfigError);
}

TEST(TrajectoryJson, Shape) {
    Trajectory t = make_trajectory({Assignment({0, 0, 1, 1}, 2), Assignment({0, 1, 0, 1}, 2)});
    json j = trajectory_to_json(t);
    EXPECT_EQ(j["assignments"], json({{0, 0, 1, 1}, {0, 1, 0, 1}}));
    EXPECT_EQ(j["moves_per_step"], json({0, 2}));
    EXPECT_EQ(j["total_moves"], 2);
    EXPECT_EQ(j["avg_moves"], 2.0);
}

}  // namespace
}  // namespace qpart
