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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qpart/bench.hpp"
#include "qpart/envserver.hpp"
#include "qpart/json_io.hpp"
#include "qpart/partition.hpp"
#include "qpart/policies.hpp"

namespace py = pybind11;
using namespace qpart;

namespace {

// Configs cross the boundary as JSON text; the Python wrapper does the dumps.
EnvConfig config_from_text(const std::string &text) { return env_config_from_json(json::parse(text)); }

std::vector<bool> mask_bools(const ActionMask &mask) {
    std::vector<bool> out(mask.size());
    for (std::size_t i = 0; i < mask.size(); ++i) {
        out[i] = mask[i] != 0;
    }
    return out;
}

py::dict info_dict(const StepInfo &info) {
    py::dict d;
    d["slice"] = info.slice;
    d["moves"] = info.moves;
    d["actions_used"] = info.actions_used;
    d["episode_length"] = info.episode_length;
    return d;
}

std::vector<Timeslice> slices_of(const std::string &circuit_text) { return timeslice(parse_circuit(circuit_text)); }

}  // namespace

PYBIND11_MODULE(_qpart, m) {
    m.doc() = "Time-sliced qubit partitioning core";

    py::register_exception<CircuitError>(m, "CircuitError", PyExc_ValueError);
    py::register_exception<PartitionError>(m, "PartitionError", PyExc_ValueError);
    py::register_exception<EnvError>(m, "EnvError", PyExc_RuntimeError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<BenchError>(m, "BenchError", PyExc_RuntimeError);

    m.def("num_actions", &num_actions, py::arg("num_qubits"));
    m.def("observation_size", &observation_size, py::arg("num_qubits"), py::arg("num_cores"));
    m.def("action_index", &action_index, py::arg("a"), py::arg("b"), py::arg("num_qubits"));

    m.def(
        "generate", [](const std::string &spec) { return format_circuit(generate(parse_generator_spec(spec))); },
        py::arg("spec"), "Gate-list text of a generated circuit");
    m.def(
        "timeslice",
        [](const std::string &text) {
            std::vector<std::vector<std::pair<int, int>>> out;
            for (const Timeslice &t : slices_of(text)) {
                auto &pairs = out.emplace_back();
                for (const Gate &g : t.pairs) {
                    pairs.emplace_back(g.a, g.b);
                }
            }
            return out;
        },
        py::arg("circuit"));
    m.def(
        "nonlocal_moves",
        [](const std::vector<int> &a, const std::vector<int> &b, int cores) {
            return nonlocal_moves(Assignment(a, cores), Assignment(b, cores));
        },
        py::arg("prev"), py::arg("next"), py::arg("num_cores"));
    m.def(
        "fgp_roee",
        [](const std::string &text, int cores, double decay, int max_passes) {
            const Circuit c = parse_circuit(text);
            const auto slices = timeslice(c);
            const CoreConfig cc = CoreConfig::for_qubits(c.num_qubits, cores);
            check_feasible(slices, cc);
            FgpOptions opt;
            opt.decay = decay;
            opt.max_passes = max_passes;
            return trajectory_to_json(fgp_roee(slices, cc, opt)).dump();
        },
        py::arg("circuit"), py::arg("num_cores"), py::arg("decay") = 0.5, py::arg("max_passes") = 8);
    m.def(
        "oracle_optimal",
        [](const std::string &text, int cores) {
            const Circuit c = parse_circuit(text);
            return trajectory_to_json(oracle_optimal(timeslice(c), CoreConfig::for_qubits(c.num_qubits, cores)))
                .dump();
        },
        py::arg("circuit"), py::arg("num_cores"));
    m.def(
        "run_benchmark",
        [](const std::string &spec_text) {
            const BenchSpec spec = bench_spec_from_json(json::parse(spec_text));
            BenchReport report;
            {
                py::gil_scoped_release release;
                report = run_benchmark(spec);
            }
            return py::make_tuple(report_csv(report), report_json(report));
        },
        py::arg("spec"), "CSV and JSON text of a benchmark run");
    m.def(
        "run_episode",
        [](const std::string &config, const std::string &policy, std::uint64_t seed) {
            const EpisodeStats s = run_episode(config_from_text(config), parse_policy_kind(policy), seed);
            py::dict d;
            d["total_moves"] = s.total_moves;
            d["avg_moves"] = s.avg_moves;
            d["episode_length"] = s.episode_length;
            d["total_reward"] = s.total_reward;
            d["completed"] = s.completed;
            return d;
        },
        py::arg("config"), py::arg("policy"), py::arg("seed") = 0);

    py::class_<Session>(m, "Session")
        .def(py::init<>())
        .def("handle", &Session::handle, py::arg("line"))
        .def_property_readonly("shutdown_requested", &Session::shutdown_requested);

    py::class_<Environment>(m, "Environment")
        .def(py::init([](const std::string &config) { return Environment(config_from_text(config)); }),
             py::arg("config"))
        .def(
            "reset",
            [](Environment &env, std::optional<std::uint64_t> seed) {
                ResetResult r = env.reset(seed);
                return py::make_tuple(r.observation, mask_bools(r.mask));
            },
            py::arg("seed") = py::none())
        .def(
            "step",
            [](Environment &env, int action) {
                StepResult r = env.step(action);
                return py::make_tuple(r.observation, r.reward, r.terminated, r.truncated, info_dict(r.info),
                                      mask_bools(r.mask));
            },
            py::arg("action"))
        .def("mask", [](const Environment &env) { return mask_bools(env.mask()); })
        .def("observe", &Environment::observe)
        .def_property_readonly("num_qubits", &Environment::num_qubits)
        .def_property_readonly("num_cores", &Environment::num_cores)
        .def_property_readonly("num_actions", &Environment::num_actions)
        .def_property_readonly("observation_size", &Environment::observation_size)
        .def_property_readonly("num_slices", &Environment::num_slices)
        .def_property_readonly("t", &Environment::t)
        .def_property_readonly("done", &Environment::done)
        .def_property_readonly("total_moves", &Environment::total_moves)
        .def_property_readonly("avg_moves", &Environment::avg_moves)
        .def_property_readonly("current", [](const Environment &env) {
            const auto c = env.current().cores();
            return std::vector<int>(c.begin(), c.end());
        });
}
