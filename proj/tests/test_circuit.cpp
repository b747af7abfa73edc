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

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <set>

#include "qpart/circuit.hpp"
#include "qpart/rng.hpp"

namespace qpart {
namespace {

std::vector<std::vector<std::pair<int, int>>> shape(const std::vector<Timeslice> &slices) {
    std::vector<std::vector<std::pair<int, int>>> out;
    for (const auto &s : slices) {
        auto &v = out.emplace_back();
        for (const auto &g : s.pairs) v.emplace_back(g.a, g.b);
    }
    return out;
}

Circuit make(int q, std::vector<Gate> gates) { return Circuit{q, std::move(gates), ""}; }

TEST(Timeslice, ConflictPushesGateToNextSlice) {
    auto s = timeslice(make(4, {{0, 1}, {2, 3}, {0, 2}}));
    EXPECT_EQ(shape(s), (std::vector<std::vector<std::pair<int, int>>>{{{0, 1}, {2, 3}}, {{0, 2}}}));
    EXPECT_EQ(s[0].index, 0);
    EXPECT_EQ(s[1].index, 1);
}

TEST(Timeslice, EmptyCircuit) { EXPECT_TRUE(timeslice(make(3, {})).empty()); }

TEST(Timeslice, RepeatedGate) {
    auto s = timeslice(make(4, {{0, 1}, {0, 1}, {2, 3}}));
    EXPECT_EQ(shape(s), (std::vector<std::vector<std::pair<int, int>>>{{{0, 1}, {2, 3}}, {{0, 1}}}));
}

TEST(Timeslice, FuzzDisjointOrderedMinimal) {
    Rng rng(11);
    for (int iter = 0; iter < 300; ++iter) {
        const int q = 2 + static_cast<int>(rng.below(9));
        std::vector<Gate> gates;
        const int n = static_cast<int>(rng.below(40));
        for (int i = 0; i < n; ++i) {
            int a = static_cast<int>(rng.below(q));
            int b = static_cast<int>(rng.below(q - 1));
            if (b >= a) ++b;
            gates.push_back({a, b});
        }
        const auto slices = timeslice(make(q, gates));
        for (const auto &s : slices) {
            ASSERT_FALSE(s.empty());
            std::set<int> used;
            for (const auto &g : s.pairs) {
                ASSERT_TRUE(used.insert(g.a).second);
                ASSERT_TRUE(used.insert(g.b).second);
            }
        }
        std::size_t total = 0;
        for (const auto &s : slices) total += s.pairs.size();
        ASSERT_EQ(total, gates.size());
        // ASAP: slice of a gate is 1 + max slice of earlier gates sharing a qubit
        std::vector<int> last(static_cast<std::size_t>(q), -1);
        std::vector<std::size_t> taken(slices.size(), 0);
        for (const auto &g : gates) {
            const int expect = std::max(last[g.a], last[g.b]) + 1;
            ASSERT_LT(static_cast<std::size_t>(expect), slices.size());
            const auto &pairs = slices[expect].pairs;
            ASSERT_LT(taken[expect], pairs.size());
            EXPECT_EQ(pairs[taken[expect]], g);
            ++taken[expect];
            last[g.a] = last[g.b] = expect;
        }
    }
}

TEST(Parse, TwoGates) {
    Circuit c = parse_circuit("qubits 4\ncx 0 1\ncx 2 3");
    EXPECT_EQ(c.num_qubits, 4);
    EXPECT_EQ(c.gates, (std::vector<Gate>{{0, 1}, {2, 3}}));
}

TEST(Parse, SkipsSingleQubitGatesAndComments) {
    Circuit c = parse_circuit("# header\nqubits 2\nh 0\n\ncx 0 1  # trailing\n");
    EXPECT_EQ(c.gates, (std::vector<Gate>{{0, 1}}));
}

TEST(Parse, OutOfRangeQubit) {
    try {
        parse_circuit("qubits 2\ncx 0 5");
        FAIL() << "expected CircuitError";
    } catch (const CircuitError &e) {
        EXPECT_NE(std::string(e.what()).find("qubit 5 out of range"), std::string::npos);
        EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
    }
}

TEST(Parse, Errors) {
    EXPECT_THROW(parse_circuit("cx 0 1"), CircuitError);
    EXPECT_THROW(parse_circuit("qubits 3\nccx 0 1 2"), CircuitError);
    EXPECT_THROW(parse_circuit("qubits 3\ncx 0 x"), CircuitError);
    EXPECT_THROW(parse_circuit("qubits 3\ncx 1 1"), CircuitError);
    EXPECT_THROW(parse_circuit("qubits two"), CircuitError);
    EXPECT_THROW(parse_circuit(""), CircuitError);
}

TEST(Parse, FormatRoundTrip) {
    Circuit c = gen_qaoa(8, 2, 3, 5);
    const std::string text = format_circuit(c);
    EXPECT_EQ(text.rfind("# " + c.name + "\n", 0), 0u);
    Circuit back = parse_circuit(text, c.name);
    EXPECT_EQ(back.num_qubits, c.num_qubits);
    EXPECT_EQ(back.gates, c.gates);
    EXPECT_EQ(back.name, c.name);
}

TEST(Parse, FileRoundTrip) {
    const auto path = std::filesystem::temp_directory_path() / "qpart_circuit_rt.txt";
    Circuit c = gen_random(6, 4, 1.0, 2);
    write_circuit_file(c, path.string());
    Circuit back = read_circuit_file(path.string());
    EXPECT_EQ(back.gates, c.gates);
    std::filesystem::remove(path);
    EXPECT_THROW(read_circuit_file("/nonexistent/dir/file.txt"), CircuitError);
}

TEST(GenRandom, ShapeMatchesLayers) {
    auto s = timeslice(gen_random(4, 3, 1.0, 7));
    ASSERT_EQ(s.size(), 3u);
    for (const auto &t : s) EXPECT_EQ(t.pairs.size(), 2u);
    auto s2 = timeslice(gen_random(16, 10, 0.5, 7));
    ASSERT_EQ(s2.size(), 10u);
    for (const auto &t : s2) EXPECT_EQ(t.pairs.size(), 4u);
}

TEST(GenRandom, FuzzLayersReproduced) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const int q = 2 + static_cast<int>(seed % 15);
        const double density = 0.3 + 0.1 * static_cast<double>(seed % 8);
        const int per = static_cast<int>(density * q / 2);
        if (per == 0) {
            EXPECT_THROW(gen_random(q, 5, density, seed), CircuitError);
            continue;
        }
        Circuit c = gen_random(q, 7, density, seed);
        auto s = timeslice(c);
        ASSERT_EQ(s.size(), 7u) << q << " " << density;
        for (std::size_t t = 0; t < s.size(); ++t) {
            ASSERT_EQ(static_cast<int>(s[t].pairs.size()), per);
            for (int i = 0; i < per; ++i) EXPECT_EQ(s[t].pairs[i], c.gates[t * per + i]);
        }
    }
}

TEST(GenRandom, Deterministic) {
    EXPECT_EQ(gen_random(16, 20, 0.5, 3), gen_random(16, 20, 0.5, 3));
    EXPECT_NE(gen_random(16, 20, 0.5, 3).gates, gen_random(16, 20, 0.5, 4).gates);
    EXPECT_THROW(gen_random(4, 3, 0.2, 0), CircuitError);
}

TEST(GenQaoa, GateCounts) {
    EXPECT_EQ(gen_qaoa(4, 1, 2, 0).gates.size(), 4u);
    EXPECT_EQ(gen_qaoa(8, 2, 3, 0).gates.size(), 24u);
    EXPECT_EQ(gen_qaoa(32, 2, 3, 9), gen_qaoa(32, 2, 3, 9));
    EXPECT_THROW(gen_qaoa(5, 1, 3, 0), CircuitError);
    EXPECT_THROW(gen_qaoa(4, 1, 4, 0), CircuitError);
}

TEST(GenQaoa, RegularSimpleGraph) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        for (int d : {1, 2, 3, 5, 9}) {
            const int n = 12;
            Circuit c = gen_qaoa(n, 1, d, seed);
            std::vector<int> deg(n, 0);
            std::set<std::pair<int, int>> edges;
            for (const auto &g : c.gates) {
                ASSERT_NE(g.a, g.b);
                ASSERT_TRUE(edges.insert({std::min(g.a, g.b), std::max(g.a, g.b)}).second);
                ++deg[g.a];
                ++deg[g.b];
            }
            for (int x : deg) EXPECT_EQ(x, d);
        }
    }
}

TEST(GenCuccaro, Sizes) {
    EXPECT_EQ(gen_cuccaro(1).num_qubits, 4);
    Circuit c = gen_cuccaro(15);
    EXPECT_EQ(c.num_qubits, 32);
    EXPECT_EQ(c, gen_cuccaro(15));
    EXPECT_EQ(c.gates.size(), 16u * 15u + 1u);
    EXPECT_THROW(gen_cuccaro(0), CircuitError);
}

TEST(GenCuccaro, LinearGateCount) {
    const auto g = [](int n) { return static_cast<long>(gen_cuccaro(n).gates.size()); };
    EXPECT_EQ(g(2) - g(1), g(3) - g(2));
    EXPECT_EQ(g(9) - g(8), g(2) - g(1));
}

TEST(GeneratorSpec, ParseAndFormat) {
    GeneratorSpec s = parse_generator_spec("random:qubits=8,slices=5,density=1,seed=3");
    EXPECT_EQ(s.family, CircuitFamily::random);
    EXPECT_EQ(s.qubits, 8);
    EXPECT_EQ(s.slices, 5);
    EXPECT_DOUBLE_EQ(s.density, 1.0);
    EXPECT_EQ(s.seed, 3u);
    EXPECT_EQ(parse_generator_spec(format_generator_spec(s)), s);
    EXPECT_EQ(parse_generator_spec("qaoa").family, CircuitFamily::qaoa);
    EXPECT_THROW(parse_generator_spec("nope"), CircuitError);
    EXPECT_THROW(parse_generator_spec("random:width=3"), CircuitError);
    EXPECT_THROW(parse_generator_spec("random:qubits=x"), CircuitError);
}

TEST(GeneratorSpec, CuccaroFromQubits) {
    EXPECT_EQ(generate(parse_generator_spec("cuccaro:qubits=32")).num_qubits, 32);
    EXPECT_EQ(generate(parse_generator_spec("cuccaro:bits=15")).num_qubits, 32);
    EXPECT_THROW(generate(parse_generator_spec("cuccaro:qubits=7")), CircuitError);
}

}  // namespace
}  // namespace qpart
