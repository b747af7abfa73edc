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
#include <string>
#include <string_view>
#include <vector>

#include "qpart/circuit.hpp"
#include "qpart/environment.hpp"
#include "qpart/interaction.hpp"

namespace qpart {

class BenchError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Methods a benchmark can compare. `remote` rows are not computed here; they
/// are read from an externally produced CSV in the report's column layout.
enum class Method { fgp_roee, random_none, random_soft, random_hard, greedy_soft, greedy_hard, remote };

std::string_view method_name(Method method);
/// Accepts `fgp_roee` and `fgp-roee` spellings.
Method parse_method(std::string_view name);

/// Per-slice budget used by benchmarks unless overridden. Unguided random
/// policies need tens of thousands of actions to hit and then commit a valid
/// slice, so the environment default of Q would truncate nearly every episode.
inline constexpr int kBenchBudget = 1'000'000;

struct BenchSpec {
    GeneratorSpec circuit;            // `qubits` and `seed` are set per instance
    std::vector<int> qubit_counts;    // empty: use circuit.qubits
    int num_cores = 4;
    std::vector<Method> methods{Method::fgp_roee, Method::greedy_hard, Method::random_hard, Method::random_soft};
    int trials = 20;
    std::uint64_t seed = 0;           // trial i uses seed + i for circuit and policy
    double decay = 0.5;
    int horizon = kFullHorizon;
    int max_passes = 8;
    int budget_per_slice = kBenchBudget;
    RewardParams reward;
    int jobs = 0;                     // 0: hardware concurrency
    bool timing = false;              // false writes wall_ms = 0 for byte-stable output
    std::string remote_csv;           // source of `remote` rows
};

struct BenchRow {
    std::string method;
    std::string circuit;
    int qubits = 0;
    int cores = 0;
    int trial = 0;
    std::uint64_t seed = 0;
    double avg_moves = 0.0;
    long long total_moves = 0;
    long long episode_length = 0;
    double total_reward = 0.0;
    double wall_ms = 0.0;
    bool completed = true;
    std::string error;

    bool operator==(const BenchRow &) const = default;
};

/// Mean and population standard deviation over completed rows of one method.
struct MethodSummary {
    std::string method;
    int rows = 0;
    int completed = 0;
    double mean_avg_moves = 0.0;
    double std_avg_moves = 0.0;
    double mean_total_reward = 0.0;
    double mean_episode_length = 0.0;
    std::optional<double> mean_ratio;  // mean of the per-instance ratios

    bool operator==(const MethodSummary &) const = default;
};

/// baseline avg_moves / method avg_moves for one instance; above 1 means the
/// method moved fewer qubits than FGP-rOEE. Empty when the method moved
/// nothing while the baseline did.
struct RatioRow {
    std::string method;
    std::string circuit;
    int qubits = 0;
    int trial = 0;
    std::optional<double> ratio;

    bool operator==(const RatioRow &) const = default;
};

struct BenchReport {
    std::vector<BenchRow> rows;
    std::vector<MethodSummary> summaries;
    std::vector<RatioRow> ratios;

    bool operator==(const BenchReport &) const = default;

    const MethodSummary *summary(std::string_view method) const;
};

/// Runs every (method, instance, trial) on shared circuits. Failures of a
/// single trial are recorded in its row.
BenchReport run_benchmark(const BenchSpec &spec);

/// Recomputes summaries and ratios from `rows` (sorting them first).
void summarize(BenchReport &report);

inline constexpr std::string_view kCsvHeader =
    "method,circuit,qubits,cores,trial,seed,avg_moves,total_moves,episode_length,total_reward,wall_ms";

std::string report_csv(const BenchReport &report);
std::vector<BenchRow> parse_report_csv(std::string_view text);
std::string report_json(const BenchReport &report);
BenchReport parse_report_json(std::string_view text);

enum class ReportFormat { csv, json };

/// Writes `report` to `path`. Throws BenchError if the path is unwritable.
void write_report(const BenchReport &report, ReportFormat format, const std::string &path);

}  // namespace qpart
