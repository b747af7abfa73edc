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

#include "qpart/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>
#include <tuple>

#include "qpart/json_io.hpp"
#include "qpart/partition.hpp"
#include "qpart/policies.hpp"

namespace qpart {

namespace {

constexpr std::string_view kMethodNames[] = {"fgp_roee",    "random_none", "random_soft", "random_hard",
                                             "greedy_soft", "greedy_hard", "remote"};

struct Instance {
    int qubits = 0;
    int trial = 0;
    std::uint64_t seed = 0;
    Circuit circuit;
    std::vector<Timeslice> slices;
};

struct Task {
    Method method;
    const Instance *instance;
};

BenchRow base_row(Method method, const Instance &inst, int cores) {
    BenchRow row;
    row.method = std::string(method_name(method));
    row.circuit = inst.circuit.name;
    row.qubits = inst.qubits;
    row.cores = cores;
    row.trial = inst.trial;
    row.seed = inst.seed;
    return row;
}

void run_fgp(const BenchSpec &spec, const Instance &inst, BenchRow &row) {
    const CoreConfig cores = CoreConfig::for_qubits(inst.qubits, spec.num_cores);
    check_feasible(inst.slices, cores);
    FgpOptions options;
    options.decay = spec.decay;
    options.horizon = spec.horizon;
    options.max_passes = spec.max_passes;
    FgpStats stats;
    const Trajectory tr = fgp_roee(inst.slices, cores, options, &stats);
    const auto num_slices = static_cast<long long>(inst.slices.size());
    row.avg_moves = tr.avg_moves;
    row.total_moves = tr.total_moves;
    // every exchange is one swap action and every slice one ADVANCE
    row.episode_length = stats.exchanges + num_slices;
    const RewardParams &r = spec.reward;
    row.total_reward = r.valid_bonus * static_cast<double>(num_slices) -
                       r.move_penalty * static_cast<double>(tr.total_moves) -
                       r.step_penalty * static_cast<double>(stats.exchanges) - r.final_scale * tr.avg_moves;
    row.completed = true;
}

void run_policy(const BenchSpec &spec, Method method, const Instance &inst, BenchRow &row) {
    EnvConfig config;
    config.source = InlineSlices{inst.qubits, inst.slices};
    config.num_cores = spec.num_cores;
    config.budget_per_slice = spec.budget_per_slice;
    config.decay = spec.decay;
    config.horizon = spec.horizon;
    config.reward = spec.reward;
    PolicyKind kind = PolicyKind::random;
    switch (method) {
    case Method::random_none: config.mask_mode = MaskMode::none; break;
    case Method::random_soft: config.mask_mode = MaskMode::soft; break;
    case Method::random_hard: config.mask_mode = MaskMode::hard; break;
    case Method::greedy_soft:
        config.mask_mode = MaskMode::soft;
        kind = PolicyKind::greedy;
        break;
    case Method::greedy_hard:
        config.mask_mode = MaskMode::hard;
        kind = PolicyKind::greedy;
        break;
    default: throw BenchError("not a policy method");
    }
    const EpisodeStats stats = run_episode(config, kind, inst.seed);
    row.avg_moves = stats.avg_moves;
    row.total_moves = stats.total_moves;
    row.episode_length = stats.episode_length;
    row.total_reward = stats.total_reward;
    row.completed = stats.completed;
    if (!stats.completed) {
        row.error = "episode truncated";
    }
}

BenchRow run_task(const BenchSpec &spec, const Task &task) {
    BenchRow row = base_row(task.method, *task.instance, spec.num_cores);
    const auto start = std::chrono::steady_clock::now();
    try {
        if (task.method == Method::fgp_roee) {
            run_fgp(spec, *task.instance, row);
        } else {
            run_policy(spec, task.method, *task.instance, row);
        }
    } catch (const std::exception &e) {
        row.completed = false;
        row.error = e.what();
    }
    if (spec.timing) {
        row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
    return row;
}

auto row_key(const BenchRow &r) { return std::tie(r.method, r.circuit, r.qubits, r.cores, r.trial, r.seed); }

std::string format_double(const char *fmt, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

std::vector<std::string> split_csv_line(std::string_view line, int line_no) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (quoted) {
        throw BenchError("CSV line " + std::to_string(line_no) + ": unterminated quote");
    }
    fields.push_back(std::move(cur));
    return fields;
}

template <typename T>
T parse_number(const std::string &s, int line_no, const char *column) {
    std::istringstream in(s);
    T value{};
    in >> value;
    if (in.fail() || !in.eof()) {
        throw BenchError("CSV line " + std::to_string(line_no) + ": bad " + column + " '" + s + "'");
    }
    return value;
}

json row_to_json(const BenchRow &r) {
    return json{{"method", r.method},
                {"circuit", r.circuit},
                {"qubits", r.qubits},
                {"cores", r.cores},
                {"trial", r.trial},
                {"seed", r.seed},
                {"avg_moves", r.avg_moves},
                {"total_moves", r.total_moves},
                {"episode_length", r.episode_length},
                {"total_reward", r.total_reward},
                {"wall_ms", r.wall_ms},
                {"completed", r.completed},
                {"error", r.error}};
}

BenchRow row_from_json(const json &j) {
    BenchRow r;
    r.method = j.at("method").get<std::string>();
    r.circuit = j.at("circuit").get<std::string>();
    r.qubits = j.at("qubits").get<int>();
    r.cores = j.at("cores").get<int>();
    r.trial = j.at("trial").get<int>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.avg_moves = j.at("avg_moves").get<double>();
    r.total_moves = j.at("total_moves").get<long long>();
    r.episode_length = j.at("episode_length").get<long long>();
    r.total_reward = j.at("total_reward").get<double>();
    r.wall_ms = j.at("wall_ms").get<double>();
    r.completed = j.value("completed", true);
    r.error = j.value("error", std::string());
    return r;
}

json optional_to_json(const std::optional<double> &v) { return v ? json(*v) : json(nullptr); }

std::optional<double> optional_from_json(const json &j) {
    if (j.is_null()) {
        return std::nullopt;
    }
    return j.get<double>();
}

}  // namespace

std::string_view method_name(Method method) { return kMethodNames[static_cast<int>(method)]; }

Method parse_method(std::string_view name) {
    std::string norm(name);
    std::replace(norm.begin(), norm.end(), '-', '_');
    for (int i = 0; i < static_cast<int>(std::size(kMethodNames)); ++i) {
        if (norm == kMethodNames[i]) {
            return static_cast<Method>(i);
        }
    }
    throw BenchError("unknown method '" + std::string(name) + "'");
}

const MethodSummary *BenchReport::summary(std::string_view method) const {
    for (const MethodSummary &s : summaries) {
        if (s.method == method) {
            return &s;
        }
    }
    return nullptr;
}

BenchReport run_benchmark(const BenchSpec &spec) {
    if (spec.trials < 1) {
        throw BenchError("trials must be at least 1");
    }
    if (spec.methods.empty()) {
        throw BenchError("no methods selected");
    }
    const std::vector<int> counts = spec.qubit_counts.empty() ? std::vector<int>{spec.circuit.qubits}
                                                               : spec.qubit_counts;

    std::vector<Instance> instances;
    for (int q : counts) {
        for (int trial = 0; trial < spec.trials; ++trial) {
            Instance inst;
            inst.qubits = q;
            inst.trial = trial;
            inst.seed = spec.seed + static_cast<std::uint64_t>(trial);
            GeneratorSpec g = spec.circuit;
            g.qubits = q;
            g.seed = inst.seed;
            if (!spec.qubit_counts.empty()) {
                g.bits = 0;  // cuccaro width follows the qubit count
            }
            try {
                inst.circuit = generate(g);
            } catch (const std::exception &e) {
                throw BenchError("cannot generate " + format_generator_spec(g) + ": " + e.what());
            }
            inst.qubits = inst.circuit.num_qubits;
            inst.slices = timeslice(inst.circuit);
            instances.push_back(std::move(inst));
        }
    }

    std::vector<Task> tasks;
    bool want_remote = false;
    for (Method m : spec.methods) {
        if (m == Method::remote) {
            want_remote = true;
            continue;
        }
        for (const Instance &inst : instances) {
            tasks.push_back(Task{m, &inst});
        }
    }

    BenchReport report;
    report.rows.resize(tasks.size());
    int jobs = spec.jobs > 0 ? spec.jobs : static_cast<int>(std::thread::hardware_concurrency());
    jobs = std::clamp(jobs, 1, std::max(1, static_cast<int>(tasks.size())));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) {
            report.rows[i] = run_task(spec, tasks[i]);
        }
    };
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (int i = 0; i < jobs; ++i) {
            pool.emplace_back(worker);
        }
    }

    if (want_remote) {
        if (spec.remote_csv.empty()) {
            throw BenchError("method 'remote' needs remote_csv");
        }
        std::ifstream in(spec.remote_csv, std::ios::binary);
        if (!in) {
            throw BenchError("cannot read " + spec.remote_csv);
        }
        std::ostringstream text;
        text << in.rdbuf();
        for (BenchRow &r : parse_report_csv(text.str())) {
            r.method = "remote";
            report.rows.push_back(std::move(r));
        }
    }

    summarize(report);
    return report;
}

void summarize(BenchReport &report) {
    std::sort(report.rows.begin(), report.rows.end(),
              [](const BenchRow &a, const BenchRow &b) { return row_key(a) < row_key(b); });
    report.summaries.clear();
    report.ratios.clear();

    // baseline avg_moves per instance
    std::map<std::tuple<std::string, int, int, int>, double> baseline;
    for (const BenchRow &r : report.rows) {
        if (r.method == "fgp_roee" && r.completed) {
            baseline[{r.circuit, r.qubits, r.cores, r.trial}] = r.avg_moves;
        }
    }

    std::map<std::string, std::vector<double>> ratios_by_method;
    for (const BenchRow &r : report.rows) {
        if (!r.completed) {
            continue;
        }
        auto it = baseline.find({r.circuit, r.qubits, r.cores, r.trial});
        if (it == baseline.end()) {
            continue;
        }
        RatioRow ratio{r.method, r.circuit, r.qubits, r.trial, std::nullopt};
        if (r.avg_moves > 0.0) {
            ratio.ratio = it->second / r.avg_moves;
        } else if (it->second == 0.0) {
            ratio.ratio = 1.0;
        }
        if (ratio.ratio) {
            ratios_by_method[r.method].push_back(*ratio.ratio);
        }
        report.ratios.push_back(std::move(ratio));
    }

    for (std::size_t i = 0; i < report.rows.size();) {
        std::size_t j = i;
        MethodSummary s;
        s.method = report.rows[i].method;
        double sum = 0.0;
        double sum_reward = 0.0;
        double sum_len = 0.0;
        for (; j < report.rows.size() && report.rows[j].method == s.method; ++j) {
            const BenchRow &r = report.rows[j];
            ++s.rows;
            if (r.completed) {
                ++s.completed;
                sum += r.avg_moves;
                sum_reward += r.total_reward;
                sum_len += static_cast<double>(r.episode_length);
            }
        }
        if (s.completed > 0) {
            const double n = s.completed;
            s.mean_avg_moves = sum / n;
            s.mean_total_reward = sum_reward / n;
            s.mean_episode_length = sum_len / n;
            double var = 0.0;
            for (std::size_t k = i; k < j; ++k) {
                if (report.rows[k].completed) {
                    const double d = report.rows[k].avg_moves - s.mean_avg_moves;
                    var += d * d;
                }
            }
            s.std_avg_moves = std::sqrt(var / n);
        }
        if (auto it = ratios_by_method.find(s.method); it != ratios_by_method.end() && !it->second.empty()) {
            double total = 0.0;
            for (double v : it->second) {
                total += v;
            }
            s.mean_ratio = total / static_cast<double>(it->second.size());
        }
        report.summaries.push_back(std::move(s));
        i = j;
    }
}

std::string report_csv(const BenchReport &report) {
    std::string out(kCsvHeader);
    out += '\n';
    for (const BenchRow &r : report.rows) {
        out += csv_field(r.method) + ',' + csv_field(r.circuit) + ',' + std::to_string(r.qubits) + ',' +
               std::to_string(r.cores) + ',' + std::to_string(r.trial) + ',' + std::to_string(r.seed) + ',' +
               format_double("%.6f", r.avg_moves) + ',' + std::to_string(r.total_moves) + ',' +
               std::to_string(r.episode_length) + ',' + format_double("%.6f", r.total_reward) + ',' +
               format_double("%.3f", r.wall_ms) + '\n';
    }
    return out;
}

std::vector<BenchRow> parse_report_csv(std::string_view text) {
    std::vector<BenchRow> rows;
    int line_no = 0;
    bool header_seen = false;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (line.empty()) {
            continue;
        }
        if (!header_seen) {
            if (line != kCsvHeader) {
                throw BenchError("CSV header does not match the report layout");
            }
            header_seen = true;
            continue;
        }
        const auto f = split_csv_line(line, line_no);
        if (f.size() != 11) {
            throw BenchError("CSV line " + std::to_string(line_no) + ": expected 11 columns, got " +
                             std::to_string(f.size()));
        }
        BenchRow r;
        r.method = f[0];
        r.circuit = f[1];
        r.qubits = parse_number<int>(f[2], line_no, "qubits");
        r.cores = parse_number<int>(f[3], line_no, "cores");
        r.trial = parse_number<int>(f[4], line_no, "trial");
        r.seed = parse_number<std::uint64_t>(f[5], line_no, "seed");
        r.avg_moves = parse_number<double>(f[6], line_no, "avg_moves");
        r.total_moves = parse_number<long long>(f[7], line_no, "total_moves");
        r.episode_length = parse_number<long long>(f[8], line_no, "episode_length");
        r.total_reward = parse_number<double>(f[9], line_no, "total_reward");
        r.wall_ms = parse_number<double>(f[10], line_no, "wall_ms");
        rows.push_back(std::move(r));
    }
    if (!header_seen) {
        throw BenchError("CSV is empty");
    }
    return rows;
}

std::string report_json(const BenchReport &report) {
    json rows = json::array();
    for (const BenchRow &r : report.rows) {
        rows.push_back(row_to_json(r));
    }
    json summaries = json::array();
    for (const MethodSummary &s : report.summaries) {
        summaries.push_back(json{{"method", s.method},
                                 {"rows", s.rows},
                                 {"completed", s.completed},
                                 {"mean_avg_moves", s.mean_avg_moves},
                                 {"std_avg_moves", s.std_avg_moves},
                                 {"mean_total_reward", s.mean_total_reward},
                                 {"mean_episode_length", s.mean_episode_length},
                                 {"mean_ratio", optional_to_json(s.mean_ratio)}});
    }
    json ratios = json::array();
    for (const RatioRow &r : report.ratios) {
        ratios.push_back(json{{"method", r.method},
                              {"circuit", r.circuit},
                              {"qubits", r.qubits},
                              {"trial", r.trial},
                              {"ratio", optional_to_json(r.ratio)}});
    }
    json doc{{"rows", std::move(rows)}, {"summaries", std::move(summaries)}, {"ratios", std::move(ratios)}};
    return doc.dump(2) + "\n";
}

BenchReport parse_report_json(std::string_view text) {
    BenchReport report;
    try {
        const json doc = json::parse(text);
        for (const json &r : doc.at("rows")) {
            report.rows.push_back(row_from_json(r));
        }
        for (const json &j : doc.at("summaries")) {
            MethodSummary s;
            s.method = j.at("method").get<std::string>();
            s.rows = j.at("rows").get<int>();
            s.completed = j.at("completed").get<int>();
            s.mean_avg_moves = j.at("mean_avg_moves").get<double>();
            s.std_avg_moves = j.at("std_avg_moves").get<double>();
            s.mean_total_reward = j.at("mean_total_reward").get<double>();
            s.mean_episode_length = j.at("mean_episode_length").get<double>();
            s.mean_ratio = optional_from_json(j.at("mean_ratio"));
            report.summaries.push_back(std::move(s));
        }
        for (const json &j : doc.at("ratios")) {
            report.ratios.push_back(RatioRow{j.at("method").get<std::string>(), j.at("circuit").get<std::string>(),
                                             j.at("qubits").get<int>(), j.at("trial").get<int>(),
                                             optional_from_json(j.at("ratio"))});
        }
    } catch (const json::exception &e) {
        throw BenchError(std::string("bad report JSON: ") + e.what());
    }
    return report;
}

void write_report(const BenchReport &report, ReportFormat format, const std::string &path) {
    const std::string text = format == ReportFormat::csv ? report_csv(report) : report_json(report);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw BenchError("cannot write " + path);
    }
    out << text;
    out.flush();
    if (!out) {
        throw BenchError("cannot write " + path);
    }
}

}  // namespace qpart
