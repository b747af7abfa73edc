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
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qpart {

using Qubit = int;

/// Raised for malformed circuit text, out-of-range qubits and infeasible
/// generator parameters.
class CircuitError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A two-qubit interaction. Single-qubit gates never reach this type.
struct Gate {
    Qubit a = 0;
    Qubit b = 0;

    bool touches(Qubit q) const { return a == q || b == q; }
    bool operator==(const Gate &) const = default;
};

struct Circuit {
    int num_qubits = 0;
    std::vector<Gate> gates;
    std::string name;

    bool operator==(const Circuit &) const = default;

    /// Throws CircuitError if a gate is out of range or acts on one qubit twice.
    void validate() const;
};

/// Gates that act on pairwise disjoint qubits and can run in parallel.
struct Timeslice {
    int index = 0;
    std::vector<Gate> pairs;

    bool empty() const { return pairs.empty(); }
    bool operator==(const Timeslice &) const = default;
};

/// ASAP layering: every gate lands in the earliest slice after the last slice
/// used by either of its qubits.
std::vector<Timeslice> timeslice(const Circuit &circuit);

/// Parses the line-based gate-list format:
///
///     # comment
///     qubits 4
///     h 0
///     cx 0 1
///
/// One-qubit lines are skipped, two-qubit lines become gates and wider gates
/// are rejected. Errors carry the 1-based line number.
Circuit parse_circuit(std::string_view text, std::string name = "");
Circuit read_circuit_file(const std::string &path);

/// Inverse of parse_circuit for two-qubit gates; every gate is written as `cx`.
std::string format_circuit(const Circuit &circuit);
void write_circuit_file(const Circuit &circuit, const std::string &path);

/// Layered random matchings: `num_slices` layers of
/// floor(density * num_qubits / 2) disjoint pairs each. Every pair after the
/// first layer reuses a qubit of the previous layer, so timeslice() recovers
/// the layers exactly.
Circuit gen_random(int num_qubits, int num_slices, double density, std::uint64_t seed);

/// One ZZ interaction per edge of a random `degree`-regular graph, repeated
/// `layers` times.
Circuit gen_qaoa(int num_qubits, int layers, int degree, std::uint64_t seed);

/// Cuccaro ripple-carry adder on 2 * num_bits + 2 qubits with every Toffoli
/// expanded into the 6-CNOT network.
Circuit gen_cuccaro(int num_bits);

enum class CircuitFamily { random, qaoa, cuccaro };

std::string_view family_name(CircuitFamily family);
CircuitFamily parse_family(std::string_view name);

/// Parameters for one of the built-in circuit generators. Fields that do not
/// apply to the chosen family are ignored.
struct GeneratorSpec {
    CircuitFamily family = CircuitFamily::random;
    int qubits = 16;
    int slices = 50;
    double density = 0.5;
    int layers = 2;
    int degree = 3;
    int bits = 0;  // cuccaro; 0 derives it from `qubits`
    std::uint64_t seed = 0;

    bool operator==(const GeneratorSpec &) const = default;
};

/// Parses `family:key=value,key=value`, e.g. `random:qubits=16,slices=50`.
GeneratorSpec parse_generator_spec(std::string_view text);
std::string format_generator_spec(const GeneratorSpec &spec);

Circuit generate(const GeneratorSpec &spec);

}  // namespace qpart
