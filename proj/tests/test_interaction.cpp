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
#include <numeric>

#include "oracles.hpp"
#include "qpart/interaction.hpp"
#include "qpart/partition.hpp"
#include "qpart/rng.hpp"

namespace qpart {
namespace {

std::vector<Timeslice> slices_from(std::vector<std::vector<Gate>> layers) {
    std::vector<Timeslice> out;
    for (std::size_t t = 0; t < layers.size(); ++t) out.push_back(Timeslice{static_cast<int>(t), layers[t]});
    return out;
}

Assignment random_balanced(int q, int k, Rng &rng) {
    std::vector<int> v(static_cast<std::size_t>(q));
    for (int i = 0; i < q; ++i) v[i] = i / (q / k);
    rng.shuffle(std::span<int>(v));
    return Assignment(v, k);
}

TEST(TieredWeight, CurrentTierDominates) {
    EXPECT_GT((TieredWeight{1, 0.0}), (TieredWeight{0, 1e300}));
    EXPECT_LT((TieredWeight{0, 0.5}), (TieredWeight{0, 0.75}));
    EXPECT_EQ((TieredWeight{1, 0.5} + TieredWeight{2, 0.25}), (TieredWeight{3, 0.75}));
    EXPECT_EQ((TieredWeight{3, 0.75} - TieredWeight{2, 0.25}), (TieredWeight{1, 0.5}));
}

TEST(Lookahead, CurrentAndFuture) {
    auto s = slices_from({{{0, 1}}, {{0, 2}}});
    auto g = lookahead_graph(s, 3, 0, 0.5, 10);
    EXPECT_EQ(g.weight(0, 1), (TieredWeight{1, 0.0}));
    EXPECT_EQ(g.weight(0, 2), (TieredWeight{0, 0.5}));
    EXPECT_EQ(g.weight(2, 0), (TieredWeight{0, 0.5}));
    EXPECT_FALSE(g.has_edge(1, 2));
    EXPECT_EQ(g.edges().size(), 2u);
}

TEST(Lookahead, Accumulates) {
    auto s = slices_from({{{0, 1}}, {{0, 1}}, {{0, 1}}});
    EXPECT_EQ(lookahead_graph(s, 2, 0, 0.5, 10).weight(0, 1), (TieredWeight{1, 0.75}));
}

TEST(Lookahead, HorizonZero) {
    auto s = slices_from({{{0, 1}}, {{0, 2}}, {{1, 2}}});
    auto g = lookahead_graph(s, 3, 0, 0.5, 0);
    EXPECT_EQ(g.edges().size(), 1u);
    EXPECT_TRUE(g.has_edge(0, 1));
}

TEST(Lookahead, Errors) {
    auto s = slices_from({{{0, 1}}});
    EXPECT_THROW(lookahead_graph(s, 2, 1), PartitionError);
    EXPECT_THROW(lookahead_graph(s, 2, -1), PartitionError);
    EXPECT_THROW(lookahead_graph(s, 2, 0, 0.5, -1), PartitionError);
    InteractionGraph g(3, 0);
    EXPECT_THROW(g.add(1, 1, {1, 0.0}), PartitionError);
}

TEST(Lookahead, MatchesBruteForce) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto c = gen_random(8, 9, 0.75, seed);
        const auto s = timeslice(c);
        for (int horizon : {0, 1, 3, kFullHorizon}) {
            for (int t = 0; t < static_cast<int>(s.size()); ++t) {
                auto g = lookahead_graph(s, 8, t, 0.6, horizon);
                for (int a = 0; a < 8; ++a) {
                    for (int b = a + 1; b < 8; ++b) {
                        auto [cur, fut] = oracle::lookahead(s, t, a, b, 0.6, horizon);
                        EXPECT_EQ(g.weight(a, b).current, cur);
                        EXPECT_NEAR(g.weight(a, b).future, fut, 1e-12);
                        EXPECT_EQ(g.has_edge(a, b), cur > 0 || fut > 0);
                    }
                }
            }
        }
    }
}

TEST(Lookahead, Monotone) {
    auto near = lookahead_graph(slices_from({{}, {{0, 1}}}), 2, 0);
    auto far = lookahead_graph(slices_from({{}, {}, {{0, 1}}}), 2, 0);
    EXPECT_GT(near.weight(0, 1), far.weight(0, 1));
}

TEST(CutWeight, Examples) {
    auto s = slices_from({{{0, 1}}, {{0, 1}}, {{0, 1}}});
    auto g = lookahead_graph(s, 2, 0);
    EXPECT_EQ(cut_weight(g, Assignment({0, 0}, 2)), (TieredWeight{0, 0.0}));
    EXPECT_EQ(cut_weight(g, Assignment({0, 1}, 2)), (TieredWeight{1, 0.75}));
    InteractionGraph single(2, 0);
    single.add(0, 1, {1, 0.0});
    EXPECT_EQ(cut_weight(single, Assignment({0, 1}, 2)), (TieredWeight{1, 0.0}));
    EXPECT_THROW(cut_weight(single, Assignment({0, 1, 1}, 2)), PartitionError);
}

TEST(CutWeight, FuzzValidityRelabelAndDelta) {
    Rng rng(5);
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const auto s = timeslice(gen_random(12, 6, 0.5 + 0.1 * (seed % 5), seed));
        for (int t = 0; t < static_cast<int>(s.size()); ++t) {
            auto g = lookahead_graph(s, 12, t);
            for (int rep = 0; rep < 10; ++rep) {
                Assignment a = random_balanced(12, 3, rng);
                const TieredWeight w = cut_weight(g, a);
                EXPECT_EQ(w.current == 0, is_valid(s[t], a));
                // relabel cores 0->1->2->0
                std::vector<int> rl(a.cores().begin(), a.cores().end());
                for (int &c : rl) c = (c + 1) % 3;
                const TieredWeight w2 = cut_weight(g, Assignment(rl, 3));
                EXPECT_EQ(w.current, w2.current);
                EXPECT_NEAR(w.future, w2.future, 1e-9);
                // delta against recomputation
                const int x = static_cast<int>(rng.below(12));
                const int y = static_cast<int>(rng.below(12));
                Assignment b = a;
                b.swap(x, y);
                const TieredWeight d = swap_cut_delta(g, a, x, y);
                const TieredWeight wb = cut_weight(g, b);
                EXPECT_EQ(wb.current - w.current, d.current);
                EXPECT_NEAR(wb.future - w.future, d.future, 1e-9);
            }
        }
    }
}

TEST(IsValid, Examples) {
    EXPECT_TRUE(is_valid(Timeslice{0, {}}, Assignment({0, 1}, 2)));
    EXPECT_FALSE(is_valid(Timeslice{0, {{0, 1}}}, Assignment({0, 1, 0, 1}, 2)));
    EXPECT_TRUE(is_valid(Timeslice{0, {{0, 1}, {2, 3}}}, Assignment({0, 0, 1, 1}, 2)));
    EXPECT_TRUE(is_valid(Timeslice{0, {{0, 1}, {2, 3}}}, Assignment({1, 1, 1, 1, 0, 0, 0, 0}, 2)));
}

TEST(Partners, Table) {
    auto p = slice_partners(Timeslice{0, {{0, 3}, {1, 2}}}, 5);
    EXPECT_EQ(p, (std::vector<Qubit>{3, 2, 1, 0, -1}));
}

}  // namespace
}  // namespace qpart
