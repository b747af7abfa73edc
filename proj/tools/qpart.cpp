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

// qpart: map, bench, serve, gen and oracle subcommands.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qpart/bench.hpp"
#include "qpart/circuit.hpp"
#include "qpart/envserver.hpp"
#include "qpart/json_io.hpp"
#include "qpart/partition.hpp"
#include "qpart/policies.hpp"

namespace {

using namespace qpart;

class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

std::uint64_t default_seed() {
    const char *env = std::getenv("QPART_SEED");
    if (env == nullptr || *env == '\0') {
        return 0;
    }
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(env, &used);
        if (used != std::string(env).size()) {
            throw std::invalid_argument(env);
        }
        return v;
    } catch (const std::exception &) {
        throw UsageError(std::string("QPART_SEED is not an unsigned integer: ") + env);
    }
}

int parse_horizon(const std::string &text) {
    if (text == "full" || text.empty()) {
        return kFullHorizon;
    }
    try {
        std::size_t used = 0;
        const int h = std::stoi(text, &used);
        if (used == text.size() && h >= 0) {
            return h;
        }
    } catch (const std::exception &) {
    }
    throw UsageError("--horizon must be 'full' or a non-negative integer, got '" + text + "'");
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

void write_text(const std::string &path, const std::string &text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << text)) {
        throw std::runtime_error("cannot write " + path);
    }
}

struct CircuitInput {
    std::string file;
    std::string gen;
    std::optional<std::uint64_t> seed;

    Circuit load() const {
        if (file.empty() == gen.empty()) {
            throw UsageError("give exactly one of --circuit and --gen");
        }
        if (!file.empty()) {
            return read_circuit_file(file);
        }
        GeneratorSpec spec = parse_generator_spec(gen);
        if (seed) {
            spec.seed = *seed;
        }
        return generate(spec);
    }
};

void add_circuit_input(CLI::App *cmd, CircuitInput &in) {
    cmd->add_option("--circuit", in.file, "Gate-list circuit file");
    cmd->add_option("--gen", in.gen, "Generator spec, e.g. random:qubits=16,slices=50");
}

// ---- map -------------------------------------------------------------------

struct MapArgs {
    CircuitInput input;
    int cores = 2;
    std::string method = "fgp-roee";
    double decay = 0.5;
    std::string horizon = "full";
    std::optional<std::uint64_t> seed;
    int max_passes = 8;
    int budget = kBenchBudget;
    std::string initial = "round_robin";
    std::string out;
};

int run_map(const MapArgs &args) {
    CircuitInput input = args.input;
    const std::uint64_t seed = args.seed.value_or(default_seed());
    input.seed = args.seed;
    const Circuit circuit = input.load();
    const std::vector<Timeslice> slices = timeslice(circuit);
    const Method method = parse_method(args.method);
    const int horizon = parse_horizon(args.horizon);

    Trajectory trajectory;
    json extra = json::object();
    if (method == Method::fgp_roee) {
        const CoreConfig cores = CoreConfig::for_qubits(circuit.num_qubits, args.cores);
        check_feasible(slices, cores);
        FgpOptions options;
        options.decay = args.decay;
        options.horizon = horizon;
        options.max_passes = args.max_passes;
        options.initial = parse_initial_strategy(args.initial);
        options.seed = seed;
        FgpStats stats;
        trajectory = fgp_roee(slices, cores, options, &stats);
        extra["exchanges"] = stats.exchanges;
        extra["repairs"] = stats.repairs;
    } else if (method == Method::remote) {
        throw UsageError("method 'remote' only exists in bench reports");
    } else {
        EnvConfig config;
        config.source = InlineSlices{circuit.num_qubits, slices};
        config.num_cores = args.cores;
        config.decay = args.decay;
        config.horizon = horizon;
        config.budget_per_slice = args.budget;
        const std::string name(method_name(method));
        config.mask_mode = parse_mask_mode(name.substr(name.find('_') + 1));
        const PolicyKind kind = parse_policy_kind(name.substr(0, name.find('_')));
        const EpisodeStats stats = run_episode(config, kind, seed);
        if (!stats.completed) {
            throw std::runtime_error("episode truncated after " + std::to_string(stats.committed.size()) + " of " +
                                     std::to_string(slices.size()) + " slices; raise --budget");
        }
        trajectory = make_trajectory(stats.committed);
        extra["episode_length"] = stats.episode_length;
        extra["total_reward"] = stats.total_reward;
    }

    json doc = trajectory_to_json(trajectory);
    doc["circuit"] = circuit.name;
    doc["qubits"] = circuit.num_qubits;
    doc["cores"] = args.cores;
    doc["method"] = std::string(method_name(method));
    doc.update(extra);
    if (!args.out.empty()) {
        write_text(args.out, doc.dump(2) + "\n");
    }
    std::cout << "avg_moves " << fmt(trajectory.avg_moves) << "\n";
    return 0;
}

// ---- bench -----------------------------------------------------------------

struct BenchArgs {
    std::string spec_file;
    std::string gen = "random";
    std::vector<int> qubits;
    std::optional<int> cores;
    std::vector<std::string> methods;
    std::optional<int> trials;
    std::optional<std::uint64_t> seed;
    std::optional<double> decay;
    std::optional<std::string> horizon;
    std::optional<int> budget;
    std::optional<int> jobs;
    bool timing = false;
    std::string remote_csv;
    std::string out;
};

int run_bench(const BenchArgs &args) {
    BenchSpec spec;
    if (!args.spec_file.empty()) {
        std::ifstream in(args.spec_file);
        if (!in) {
            throw std::runtime_error("cannot read " + args.spec_file);
        }
        json j;
        try {
            j = json::parse(in);
        } catch (const json::parse_error &e) {
            throw ConfigError(args.spec_file + ": " + e.what());
        }
        spec = bench_spec_from_json(j);
    } else {
        spec.circuit = parse_generator_spec(args.gen);
        spec.seed = default_seed();
    }
    if (!args.qubits.empty()) spec.qubit_counts = args.qubits;
    if (args.cores) spec.num_cores = *args.cores;
    if (!args.methods.empty()) {
        spec.methods.clear();
        for (const auto &m : args.methods) spec.methods.push_back(parse_method(m));
    }
    if (args.trials) spec.trials = *args.trials;
    if (args.seed) spec.seed = *args.seed;
    if (args.decay) spec.decay = *args.decay;
    if (args.horizon) spec.horizon = parse_horizon(*args.horizon);
    if (args.budget) spec.budget_per_slice = *args.budget;
    if (args.jobs) spec.jobs = *args.jobs;
    if (args.timing) spec.timing = true;
    if (!args.remote_csv.empty()) spec.remote_csv = args.remote_csv;

    const BenchReport report = run_benchmark(spec);
    std::filesystem::create_directories(args.out);
    write_report(report, ReportFormat::csv, (std::filesystem::path(args.out) / "bench.csv").string());
    write_report(report, ReportFormat::json, (std::filesystem::path(args.out) / "bench.json").string());

    std::printf("%-12s %5s %5s %12s %10s %10s\n", "method", "rows", "done", "avg_moves", "std", "ratio");
    for (const MethodSummary &s : report.summaries) {
        std::printf("%-12s %5d %5d %12.4f %10.4f %10s\n", s.method.c_str(), s.rows, s.completed, s.mean_avg_moves,
                    s.std_avg_moves, s.mean_ratio ? fmt(*s.mean_ratio).c_str() : "-");
    }
    for (const BenchRow &r : report.rows) {
        if (!r.completed) {
            std::fprintf(stderr, "qpart: %s %s trial %d: %s\n", r.method.c_str(), r.circuit.c_str(), r.trial,
                         r.error.c_str());
        }
    }
    return 0;
}

// ---- gen -------------------------------------------------------------------

struct GenArgs {
    std::string family = "random";
    std::optional<int> qubits;
    std::optional<int> slices;
    std::optional<double> density;
    std::optional<int> layers;
    std::optional<int> degree;
    std::optional<int> bits;
    std::optional<std::uint64_t> seed;
    std::string out;
};

int run_gen(const GenArgs &args) {
    GeneratorSpec spec;
    spec.family = parse_family(args.family);
    if (args.qubits) spec.qubits = *args.qubits;
    if (args.slices) spec.slices = *args.slices;
    if (args.density) spec.density = *args.density;
    if (args.layers) spec.layers = *args.layers;
    if (args.degree) spec.degree = *args.degree;
    if (args.bits) spec.bits = *args.bits;
    spec.seed = args.seed.value_or(default_seed());
    const Circuit circuit = generate(spec);
    write_text(args.out, format_circuit(circuit));
    if (!args.out.empty() && args.out != "-") {
        std::cout << circuit.name << ": " << circuit.num_qubits << " qubits, " << circuit.gates.size()
                  << " two-qubit gates\n";
    }
    return 0;
}

// ---- oracle ----------------------------------------------------------------

struct OracleArgs {
    CircuitInput input;
    int cores = 2;
    std::uint64_t bound = kOracleBound;
    std::string out;
};

int run_oracle(const OracleArgs &args) {
    const Circuit circuit = args.input.load();
    const std::vector<Timeslice> slices = timeslice(circuit);
    const CoreConfig cores = CoreConfig::for_qubits(circuit.num_qubits, args.cores);
    const Trajectory best = oracle_optimal(slices, cores, args.bound);
    if (!args.out.empty()) {
        write_text(args.out, trajectory_to_json(best).dump(2) + "\n");
    }
    std::cout << best.total_moves << "\n";
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Time-sliced qubit partitioning for multi-core quantum architectures"};
    app.require_subcommand(1);

    MapArgs map;
    auto *map_cmd = app.add_subcommand("map", "Partition every slice of a circuit and write the trajectory");
    add_circuit_input(map_cmd, map.input);
    map_cmd->add_option("--cores,-k", map.cores, "Number of cores")->capture_default_str();
    map_cmd->add_option("--method", map.method, "fgp-roee, greedy-hard, greedy-soft, random-hard, random-soft, random-none")
        ->capture_default_str();
    map_cmd->add_option("--decay", map.decay, "Lookahead decay")->capture_default_str();
    map_cmd->add_option("--horizon", map.horizon, "Lookahead horizon in slices, or 'full'")->capture_default_str();
    map_cmd->add_option("--seed", map.seed, "Seed for generators and random policies (default $QPART_SEED or 0)");
    map_cmd->add_option("--max-passes", map.max_passes, "Exchange passes per slice")->capture_default_str();
    map_cmd->add_option("--budget", map.budget, "Per-slice action budget for policy methods")->capture_default_str();
    map_cmd->add_option("--initial", map.initial, "round_robin or random")->capture_default_str();
    map_cmd->add_option("--out,-o", map.out, "Trajectory JSON path");

    BenchArgs bench;
    auto *bench_cmd = app.add_subcommand("bench", "Compare methods on generated circuits");
    bench_cmd->add_option("--spec", bench.spec_file, "BenchSpec JSON file; flags override its fields");
    bench_cmd->add_option("--gen", bench.gen, "Circuit generator spec")->capture_default_str();
    bench_cmd->add_option("--qubits", bench.qubits, "Qubit counts")->delimiter(',');
    bench_cmd->add_option("--cores,-k", bench.cores, "Number of cores");
    bench_cmd->add_option("--methods", bench.methods, "Methods to run")->delimiter(',');
    bench_cmd->add_option("--trials", bench.trials, "Trials per qubit count");
    bench_cmd->add_option("--seed", bench.seed, "First trial seed (default $QPART_SEED or 0)");
    bench_cmd->add_option("--decay", bench.decay, "Lookahead decay");
    bench_cmd->add_option("--horizon", bench.horizon, "Lookahead horizon or 'full'");
    bench_cmd->add_option("--budget", bench.budget, "Per-slice action budget");
    bench_cmd->add_option("--jobs,-j", bench.jobs, "Worker threads (default: all cores)");
    bench_cmd->add_flag("--timing", bench.timing, "Record wall-clock times");
    bench_cmd->add_option("--remote-csv", bench.remote_csv, "CSV with rows for the 'remote' method");
    bench_cmd->add_option("--out,-o", bench.out, "Output directory")->required();

    std::string transport = "stdio";
    int port = 5555;
    std::string host = "127.0.0.1";
    auto *serve_cmd = app.add_subcommand("serve", "Serve environments over line-delimited JSON");
    serve_cmd->add_option("--transport", transport, "stdio or tcp")
        ->check(CLI::IsMember({"stdio", "tcp"}))
        ->capture_default_str();
    serve_cmd->add_option("--port", port, "TCP port (0 picks a free one)")->capture_default_str();
    serve_cmd->add_option("--host", host, "TCP bind address")->capture_default_str();

    GenArgs gen;
    auto *gen_cmd = app.add_subcommand("gen", "Generate a gate-list circuit");
    gen_cmd->add_option("--family", gen.family, "random, qaoa or cuccaro")->capture_default_str();
    gen_cmd->add_option("--qubits", gen.qubits, "Qubit count");
    gen_cmd->add_option("--slices", gen.slices, "Slices (random)");
    gen_cmd->add_option("--density", gen.density, "Fraction of qubits paired per slice (random)");
    gen_cmd->add_option("--layers", gen.layers, "QAOA layers");
    gen_cmd->add_option("--degree", gen.degree, "QAOA graph degree");
    gen_cmd->add_option("--bits", gen.bits, "Adder width (cuccaro)");
    gen_cmd->add_option("--seed", gen.seed, "Seed (default $QPART_SEED or 0)");
    gen_cmd->add_option("--out,-o", gen.out, "Output file (default stdout)");

    OracleArgs oracle;
    auto *oracle_cmd = app.add_subcommand("oracle", "Exact minimum total moves for a small circuit");
    add_circuit_input(oracle_cmd, oracle.input);
    oracle_cmd->add_option("--cores,-k", oracle.cores, "Number of cores")->capture_default_str();
    oracle_cmd->add_option("--bound", oracle.bound, "Largest balanced-assignment count to enumerate")
        ->capture_default_str();
    oracle_cmd->add_option("--out,-o", oracle.out, "Optimal trajectory JSON path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (map_cmd->parsed()) return run_map(map);
        if (bench_cmd->parsed()) return run_bench(bench);
        if (gen_cmd->parsed()) return run_gen(gen);
        if (oracle_cmd->parsed()) return run_oracle(oracle);
        if (transport == "stdio") {
            std::ios::sync_with_stdio(false);
            serve_stream(std::cin, std::cout);
            return 0;
        }
        serve_tcp(port, host, [](int bound) {
            std::cout << "listening on port " << bound << std::endl;
        });
        return 0;
    } catch (const UsageError &e) {
        std::cerr << "qpart: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "qpart: error: " << e.what() << "\n";
        return 1;
    }
}
