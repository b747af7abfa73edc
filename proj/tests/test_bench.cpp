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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qpart/bench.hpp"
#include "qpart/json_io.hpp"
#include "qpart/partition.hpp"

namespace qpart {
namespace {

BenchSpec small_spec() {
    BenchSpec spec;
    spec.circuit = parse_generator_spec("random:qubits=8,slices=10");
    spec.num_cores = 2;
    spec.trials = 3;
    spec.methods = {Method::fgp_roee, Method::greedy_hard, Method::random_hard, Method::random_soft};
    spec.jobs = 2;
    return spec;
}

std::string slurp(const std::filesystem::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

TEST(Method, Names) {
    EXPECT_EQ(parse_method("fgp-roee"), Method::fgp_roee);
    EXPECT_EQ(parse_method("greedy_hard"), Method::greedy_hard);
    EXPECT_EQ(method_name(Method::random_none), "random_none");
    EXPECT_THROW(parse_method("ppo"), BenchError);
}

TEST(Bench, SingleFgpRowSelfRatio) {
    BenchSpec spec = small_spec();
    spec.trials = 1;
    spec.methods = {Method::fgp_roee};
    auto r = run_benchmark(spec);
    ASSERT_EQ(r.rows.size(), 1u);
    ASSERT_EQ(r.ratios.size(), 1u);
    EXPECT_DOUBLE_EQ(*r.ratios[0].ratio, 1.0);
    EXPECT_DOUBLE_EQ(*r.summary("fgp_roee")->mean_ratio, 1.0);
}

TEST(Bench, FgpRowMatchesTrajectory) {
    BenchSpec spec = small_spec();
    auto r = run_benchmark(spec);
    for (const auto &row : r.rows) {
        if (row.method != "fgp_roee") continue;
        GeneratorSpec g = spec.circuit;
        g.seed = row.seed;
        const auto slices = timeslice(generate(g));
        auto t = fgp_roee(slices, CoreConfig::for_qubits(8, 2));
        long long total = 0;
        for (std::size_t i = 1; i < t.assignments.size(); ++i) total += nonlocal_moves(t.assignments[i - 1], t.assignments[i]);
        EXPECT_EQ(row.total_moves, total);
        EXPECT_DOUBLE_EQ(row.avg_moves, static_cast<double>(total) / static_cast<double>(slices.size() - 1));
    }
}

TEST(Bench, SharedInstancesAndRatios) {
    auto r = run_benchmark(small_spec());
    EXPECT_EQ(r.rows.size(), 12u);
    EXPECT_EQ(r.summaries.size(), 4u);
    for (const auto &row : r.rows) {
        EXPECT_TRUE(row.completed) << row.method << " " << row.error;
        EXPECT_EQ(row.wall_ms, 0.0);
        EXPECT_EQ(row.seed, static_cast<std::uint64_t>(row.trial));
    }
    for (const auto &ratio : r.ratios) {
        const BenchRow *base = nullptr;
        const BenchRow *mine = nullptr;
        for (const auto &row : r.rows) {
            if (row.trial != ratio.trial) continue;
            if (row.method == "fgp_roee") base = &row;
            if (row.method == ratio.method) mine = &row;
        }
        ASSERT_TRUE(base && mine);
        EXPECT_EQ(base->circuit, mine->circuit);
        ASSERT_TRUE(ratio.ratio.has_value());
        EXPECT_DOUBLE_EQ(*ratio.ratio, base->avg_moves / mine->avg_moves);
    }
}

TEST(Bench, DeterministicAcrossJobCounts) {
    BenchSpec a = small_spec();
    a.jobs = 1;
    BenchSpec b = small_spec();
    b.jobs = 3;
    EXPECT_EQ(report_csv(run_benchmark(a)), report_csv(run_benchmark(b)));
}

TEST(Bench, TruncationRecordedNotFatal) {
    BenchSpec spec = small_spec();
    spec.methods = {Method::random_none};
    spec.budget_per_slice = 2;
    spec.trials = 2;
    auto r = run_benchmark(spec);
    ASSERT_EQ(r.rows.size(), 2u);
    for (const auto &row : r.rows) EXPECT_FALSE(row.completed);
    EXPECT_EQ(r.summary("random_none")->completed, 0);
}

TEST(Bench, InfeasibleInstanceRecorded) {
    BenchSpec spec;
    spec.circuit = parse_generator_spec("random:qubits=6,slices=3,density=1");
    spec.num_cores = 2;
    spec.trials = 1;
    spec.methods = {Method::fgp_roee, Method::greedy_hard};
    auto r = run_benchmark(spec);
    for (const auto &row : r.rows) {
        EXPECT_FALSE(row.completed);
        EXPECT_FALSE(row.error.empty());
    }
}

TEST(Bench, SpecErrors) {
    BenchSpec spec = small_spec();
    spec.trials = 0;
    EXPECT_THROW(run_benchmark(spec), BenchError);
    spec = small_spec();
    spec.methods = {Method::remote};
    EXPECT_THROW(run_benchmark(spec), BenchError);
}

TEST(Report, EmptyCsvIsHeaderOnly) {
    EXPECT_EQ(report_csv(BenchReport{}), std::string(kCsvHeader) + "\n");
    EXPECT_TRUE(parse_report_csv(report_csv(BenchReport{})).empty());
}

TEST(Report, CsvRoundTrip) {
    auto r = run_benchmark(small_spec());
    auto rows = parse_report_csv(report_csv(r));
    ASSERT_EQ(rows.size(), r.rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        EXPECT_EQ(rows[i].method, r.rows[i].method);
        EXPECT_EQ(rows[i].total_moves, r.rows[i].total_moves);
        EXPECT_NEAR(rows[i].avg_moves, r.rows[i].avg_moves, 1e-6);
    }
    BenchRow odd;
    odd.method = "remote";
    odd.circuit = "name, with \"quotes\"";
    BenchReport one;
    one.rows = {odd};
    EXPECT_EQ(parse_report_csv(report_csv(one))[0].circuit, odd.circuit);
    EXPECT_THROW(parse_report_csv("a,b\n"), BenchError);
    EXPECT_THROW(parse_report_csv(std::string(kCsvHeader) + "\nx,y\n"), BenchError);
}

TEST(Report, JsonRoundTrip) {
    auto r = run_benchmark(small_spec());
    EXPECT_EQ(parse_report_json(report_json(r)), r);
    EXPECT_THROW(parse_report_json("{}"), BenchError);
}

TEST(Report, WriteFilesByteIdentical) {
    const auto dir = std::filesystem::temp_directory_path() / "qpart_bench_test";
    std::filesystem::create_directories(dir);
    auto r = run_benchmark(small_spec());
    write_report(r, ReportFormat::csv, (dir / "a.csv").string());
    write_report(r, ReportFormat::csv, (dir / "b.csv").string());
    write_report(r, ReportFormat::json, (dir / "a.json").string());
    EXPECT_EQ(slurp(dir / "a.csv"), slurp(dir / "b.csv"));
    EXPECT_EQ(slurp(dir / "a.csv").find('\r'), std::string::npos);
    EXPECT_EQ(parse_report_json(slurp(dir / "a.json")), r);
    EXPECT_THROW(write_report(r, ReportFormat::csv, "/nonexistent/dir/x.csv"), BenchError);
    std::filesystem::remove_all(dir);
}

TEST(Report, RemoteRowsJoin) {
    const auto path = std::filesystem::temp_directory_path() / "qpart_remote.csv";
    BenchSpec spec = small_spec();
    spec.methods = {Method::fgp_roee, Method::greedy_hard};
    auto produced = run_benchmark(spec);
    BenchReport only;
    for (const auto &row : produced.rows)
        if (row.method == "greedy_hard") only.rows.push_back(row);
    write_report(only, ReportFormat::csv, path.string());
    spec.methods = {Method::fgp_roee, Method::remote};
    spec.remote_csv = path.string();
    auto r = run_benchmark(spec);
    const auto *remote = r.summary("remote");
    ASSERT_NE(remote, nullptr);
    EXPECT_EQ(remote->rows, 3);
    EXPECT_TRUE(remote->mean_ratio.has_value());
    EXPECT_NEAR(*remote->mean_ratio, *produced.summary("greedy_hard")->mean_ratio, 1e-5);
    std::filesystem::remove(path);
}

TEST(Spec, JsonRoundTrip) {
    BenchSpec spec = small_spec();
    spec.horizon = 3;
    auto back = bench_spec_from_json(bench_spec_to_json(spec));
    EXPECT_EQ(bench_spec_to_json(back), bench_spec_to_json(spec));
    EXPECT_THROW(bench_spec_from_json(json{{"trails", 3}}), ConfigError);
    EXPECT_THROW(bench_spec_from_json(json{{"methods", {"ppo"}}}), BenchError);
}

}  // namespace
}  // namespace qpart
