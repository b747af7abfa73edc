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

#include "qpart/circuit.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "qpart/rng.hpp"

namespace qpart {

namespace {

std::string line_error(int line_number, const std::string &what) {
    return "line " + std::to_string(line_number) + ": " + what;
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) {
            ++i;
        }
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') {
            ++j;
        }
        if (j > i) {
            out.push_back(s.substr(i, j - i));
        }
        i = j;
    }
    return out;
}

bool parse_int(std::string_view token, long long &out) {
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
    return ec == std::errc() && ptr == token.data() + token.size();
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

}  // namespace

void Circuit::validate() const {
    if (num_qubits < 0) {
        throw CircuitError("negative qubit count");
    }
    for (const Gate &g : gates) {
        for (Qubit q : {g.a, g.b}) {
            if (q < 0 || q >= num_qubits) {
                throw CircuitError("qubit " + std::to_string(q) + " out of range");
            }
        }
        if (g.a == g.b) {
            throw CircuitError("gate acts twice on qubit " + std::to_string(g.a));
        }
    }
}

std::vector<Timeslice> timeslice(const Circuit &circuit) {
    std::vector<int> last(static_cast<std::size_t>(circuit.num_qubits), -1);
    std::vector<Timeslice> slices;
    for (const Gate &g : circuit.gates) {
        int layer = std::max(last[g.a], last[g.b]) + 1;
        last[g.a] = layer;
        last[g.b] = layer;
        if (layer == static_cast<int>(slices.size())) {
            slices.push_back(Timeslice{layer, {}});
        }
        slices[layer].pairs.push_back(g);
    }
    return slices;
}

Circuit parse_circuit(std::string_view text, std::string name) {
    Circuit circuit;
    circuit.name = std::move(name);
    bool have_header = false;
    int line_number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_number;

        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        auto tokens = split_ws(line);
        if (tokens.empty()) {
            continue;
        }

        if (tokens[0] == "qubits") {
            long long count = 0;
            if (have_header) {
                throw CircuitError(line_error(line_number, "duplicate qubits header"));
            }
            if (tokens.size() != 2 || !parse_int(tokens[1], count) || count < 0 || count > 1'000'000) {
                throw CircuitError(line_error(line_number, "expected 'qubits <count>'"));
            }
            circuit.num_qubits = static_cast<int>(count);
            have_header = true;
            continue;
        }
        if (!have_header) {
            throw CircuitError(line_error(line_number, "gate before 'qubits' header"));
        }

        std::vector<Qubit> operands;
        for (std::size_t i = 1; i < tokens.size(); ++i) {
            long long q = 0;
            if (!parse_int(tokens[i], q)) {
                throw CircuitError(line_error(line_number, "bad qubit index '" + std::string(tokens[i]) + "'"));
            }
            if (q < 0 || q >= circuit.num_qubits) {
                throw CircuitError(line_error(line_number, "qubit " + std::to_string(q) + " out of range"));
            }
            operands.push_back(static_cast<Qubit>(q));
        }
        switch (operands.size()) {
            case 0:
                throw CircuitError(line_error(line_number, "gate '" + std::string(tokens[0]) + "' has no operands"));
            case 1:
                break;
            case 2:
                if (operands[0] == operands[1]) {
                    throw CircuitError(
                        line_error(line_number, "gate acts twice on qubit " + std::to_string(operands[0])));
                }
                circuit.gates.push_back(Gate{operands[0], operands[1]});
                break;
            default:
                throw CircuitError(line_error(
                    line_number,
                    "gate '" + std::string(tokens[0]) + "' acts on " + std::to_string(operands.size()) +
                        " qubits; only one- and two-qubit gates are supported"));
        }
    }
    if (!have_header) {
        throw CircuitError("missing 'qubits <count>' header");
    }
    return circuit;
}

Circuit read_circuit_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw CircuitError("cannot open circuit file '" + path + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    std::string name = path;
    if (auto slash = name.find_last_of('/'); slash != std::string::npos) {
        name = name.substr(slash + 1);
    }
    if (auto dot = name.find_last_of('.'); dot != std::string::npos && dot > 0) {
        name = name.substr(0, dot);
    }
    return parse_circuit(buffer.str(), name);
}

std::string format_circuit(const Circuit &circuit) {
    std::string out;
    if (!circuit.name.empty()) {
        out += "# " + circuit.name + "\n";
    }
    out += "qubits " + std::to_string(circuit.num_qubits) + "\n";
    for (const Gate &g : circuit.gates) {
        out += "cx " + std::to_string(g.a) + " " + std::to_string(g.b) + "\n";
    }
    return out;
}

void write_circuit_file(const Circuit &circuit, const std::string &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw CircuitError("cannot write circuit file '" + path + "'");
    }
    out << format_circuit(circuit);
    if (!out) {
        throw CircuitError("failed writing circuit file '" + path + "'");
    }
}

Circuit gen_random(int num_qubits, int num_slices, double density, std::uint64_t seed) {
    if (num_qubits < 2) {
        throw CircuitError("random circuit needs at least 2 qubits");
    }
    if (num_slices < 0) {
        throw CircuitError("negative slice count");
    }
    if (!(density > 0.0 && density <= 1.0)) {
        throw CircuitError("density must lie in (0, 1]");
    }
    const int pairs = static_cast<int>(density * num_qubits / 2.0);
    if (pairs == 0) {
        throw CircuitError("density " + format_double(density) + " yields no pairs per slice on " +
                           std::to_string(num_qubits) + " qubits");
    }

    Rng rng(seed);
    Circuit circuit;
    circuit.num_qubits = num_qubits;
    circuit.name = "random_q" + std::to_string(num_qubits) + "_s" + std::to_string(num_slices) + "_d" +
                   format_double(density) + "_seed" + std::to_string(seed);

    std::vector<Qubit> previous;  // qubits touched by the previous layer
    for (int layer = 0; layer < num_slices; ++layer) {
        std::vector<char> used(static_cast<std::size_t>(num_qubits), 0);
        std::vector<Qubit> anchors = previous;
        rng.shuffle(std::span<Qubit>(anchors));
        std::vector<Qubit> touched;
        for (int p = 0; p < pairs; ++p) {
            Qubit first;
            if (layer == 0) {
                std::vector<Qubit> free;
                for (Qubit q = 0; q < num_qubits; ++q) {
                    if (!used[q]) {
                        free.push_back(q);
                    }
                }
                first = free[rng.below(free.size())];
            } else {
                // An anchor from the previous layer pins this gate to the
                // current slice under ASAP layering.
                auto it = std::find_if(anchors.begin(), anchors.end(), [&](Qubit q) { return !used[q]; });
                first = *it;
            }
            used[first] = 1;
            std::vector<Qubit> free;
            for (Qubit q = 0; q < num_qubits; ++q) {
                if (!used[q]) {
                    free.push_back(q);
                }
            }
            Qubit second = free[rng.below(free.size())];
            used[second] = 1;
            circuit.gates.push_back(Gate{first, second});
            touched.push_back(first);
            touched.push_back(second);
        }
        std::sort(touched.begin(), touched.end());
        previous = std::move(touched);
    }
    return circuit;
}

namespace {

// Random simple d-regular graph by incremental stub matching with restarts.
std::vector<Gate> random_regular_graph(int n, int d, Rng &rng) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<Qubit> stubs;
        for (Qubit v = 0; v < n; ++v) {
            for (int i = 0; i < d; ++i) {
                stubs.push_back(v);
            }
        }
        std::set<std::pair<Qubit, Qubit>> edges;
        bool stuck = false;
        while (!stubs.empty() && !stuck) {
            bool placed = false;
            for (int tries = 0; tries < 64 && !placed; ++tries) {
                std::size_t i = rng.below(stubs.size());
                std::size_t j = rng.below(stubs.size());
                Qubit u = stubs[i], v = stubs[j];
                if (i == j || u == v || edges.count({std::min(u, v), std::max(u, v)})) {
                    continue;
                }
                edges.insert({std::min(u, v), std::max(u, v)});
                if (i < j) {
                    std::swap(i, j);
                }
                stubs.erase(stubs.begin() + static_cast<std::ptrdiff_t>(i));
                stubs.erase(stubs.begin() + static_cast<std::ptrdiff_t>(j));
                placed = true;
            }
            if (!placed) {
                // Random probing failed; check whether any suitable pair remains.
                std::vector<std::pair<std::size_t, std::size_t>> options;
                for (std::size_t i = 0; i < stubs.size(); ++i) {
                    for (std::size_t j = i + 1; j < stubs.size(); ++j) {
                        Qubit u = stubs[i], v = stubs[j];
                        if (u != v && !edges.count({std::min(u, v), std::max(u, v)})) {
                            options.emplace_back(i, j);
                        }
                    }
                }
                if (options.empty()) {
                    stuck = true;
                    break;
                }
                auto [i, j] = options[rng.below(options.size())];
                Qubit u = stubs[i], v = stubs[j];
                edges.insert({std::min(u, v), std::max(u, v)});
                stubs.erase(stubs.begin() + static_cast<std::ptrdiff_t>(j));
                stubs.erase(stubs.begin() + static_cast<std::ptrdiff_t>(i));
            }
        }
        if (!stuck) {
            std::vector<Gate> out;
            for (auto [u, v] : edges) {
                out.push_back(Gate{u, v});
            }
            return out;
        }
    }
    throw CircuitError("failed to sample a " + std::to_string(d) + "-regular graph on " + std::to_string(n) +
                       " vertices");
}

}  // namespace

Circuit gen_qaoa(int num_qubits, int layers, int degree, std::uint64_t seed) {
    if (num_qubits < 2 || degree < 1 || degree >= num_qubits) {
        throw CircuitError("infeasible regular graph: degree " + std::to_string(degree) + " on " +
                           std::to_string(num_qubits) + " qubits");
    }
    if ((static_cast<long long>(degree) * num_qubits) % 2 != 0) {
        throw CircuitError("infeasible regular graph: degree * qubits must be even");
    }
    if (layers < 0) {
        throw CircuitError("negative layer count");
    }

    Rng rng(seed);
    std::vector<Gate> edges;
    if (2 * degree > num_qubits - 1) {
        // Dense case: sample the sparse complement instead.
        std::vector<Gate> complement;
        if (num_qubits - 1 - degree > 0) {
            complement = random_regular_graph(num_qubits, num_qubits - 1 - degree, rng);
        }
        std::set<std::pair<Qubit, Qubit>> excluded;
        for (const Gate &g : complement) {
            excluded.insert({g.a, g.b});
        }
        for (Qubit u = 0; u < num_qubits; ++u) {
            for (Qubit v = u + 1; v < num_qubits; ++v) {
                if (!excluded.count({u, v})) {
                    edges.push_back(Gate{u, v});
                }
            }
        }
    } else {
        edges = random_regular_graph(num_qubits, degree, rng);
    }
    rng.shuffle(std::span<Gate>(edges));

    Circuit circuit;
    circuit.num_qubits = num_qubits;
    circuit.name = "qaoa_q" + std::to_string(num_qubits) + "_p" + std::to_string(layers) + "_d" +
                   std::to_string(degree) + "_seed" + std::to_string(seed);
    for (int layer = 0; layer < layers; ++layer) {
        circuit.gates.insert(circuit.gates.end(), edges.begin(), edges.end());
    }
    return circuit;
}

namespace {

// Two-qubit skeleton of the standard Toffoli network: H/T/Tdg gates are
// single-qubit and dropped, leaving six CNOTs.
void toffoli(std::vector<Gate> &out, Qubit x, Qubit y, Qubit target) {
    out.push_back({y, target});
    out.push_back({x, target});
    out.push_back({y, target});
    out.push_back({x, target});
    out.push_back({x, y});
    out.push_back({x, y});
}

void maj(std::vector<Gate> &out, Qubit c, Qubit b, Qubit a) {
    out.push_back({a, b});
    out.push_back({a, c});
    toffoli(out, c, b, a);
}

void uma(std::vector<Gate> &out, Qubit c, Qubit b, Qubit a) {
    toffoli(out, c, b, a);
    out.push_back({a, c});
    out.push_back({c, b});
}

}  // namespace

Circuit gen_cuccaro(int num_bits) {
    if (num_bits < 1) {
        throw CircuitError("cuccaro adder needs at least 1 bit");
    }
    // Layout: carry-in 0, then (b_i, a_i) interleaved, carry-out last.
    const Qubit carry_in = 0;
    const Qubit carry_out = 2 * num_bits + 1;
    auto b = [](int i) { return 1 + 2 * i; };
    auto a = [](int i) { return 2 + 2 * i; };

    Circuit circuit;
    circuit.num_qubits = 2 * num_bits + 2;
    circuit.name = "cuccaro_n" + std::to_string(num_bits);
    auto &g = circuit.gates;
    maj(g, carry_in, b(0), a(0));
    for (int i = 1; i < num_bits; ++i) {
        maj(g, a(i - 1), b(i), a(i));
    }
    g.push_back({a(num_bits - 1), carry_out});
    for (int i = num_bits - 1; i >= 1; --i) {
        uma(g, a(i - 1), b(i), a(i));
    }
    uma(g, carry_in, b(0), a(0));
    return circuit;
}

std::string_view family_name(CircuitFamily family) {
    switch (family) {
        case CircuitFamily::random:
            return "random";
        case CircuitFamily::qaoa:
            return "qaoa";
        case CircuitFamily::cuccaro:
            return "cuccaro";
    }
    return "unknown";
}

CircuitFamily parse_family(std::string_view name) {
    if (name == "random") {
        return CircuitFamily::random;
    }
    if (name == "qaoa") {
        return CircuitFamily::qaoa;
    }
    if (name == "cuccaro") {
        return CircuitFamily::cuccaro;
    }
    throw CircuitError("unknown circuit family '" + std::string(name) + "'");
}

GeneratorSpec parse_generator_spec(std::string_view text) {
    GeneratorSpec spec;
    auto colon = text.find(':');
    spec.family = parse_family(text.substr(0, colon));
    if (colon == std::string_view::npos) {
        return spec;
    }
    std::string_view rest = text.substr(colon + 1);
    while (!rest.empty()) {
        auto comma = rest.find(',');
        std::string_view item = rest.substr(0, comma);
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        if (item.empty()) {
            continue;
        }
        auto eq = item.find('=');
        if (eq == std::string_view::npos) {
            throw CircuitError("generator parameter '" + std::string(item) + "' is not key=value");
        }
        std::string_view key = item.substr(0, eq);
        std::string value(item.substr(eq + 1));
        long long iv = 0;
        auto need_int = [&]() {
            if (!parse_int(value, iv)) {
                throw CircuitError("generator parameter '" + std::string(key) + "' expects an integer");
            }
            return iv;
        };
        if (key == "qubits") {
            spec.qubits = static_cast<int>(need_int());
        } else if (key == "slices") {
            spec.slices = static_cast<int>(need_int());
        } else if (key == "layers") {
            spec.layers = static_cast<int>(need_int());
        } else if (key == "degree") {
            spec.degree = static_cast<int>(need_int());
        } else if (key == "bits") {
            spec.bits = static_cast<int>(need_int());
        } else if (key == "seed") {
            spec.seed = static_cast<std::uint64_t>(need_int());
        } else if (key == "density") {
            try {
                std::size_t used = 0;
                spec.density = std::stod(value, &used);
                if (used != value.size()) {
                    throw std::invalid_argument(value);
                }
            } catch (const std::exception &) {
                throw CircuitError("generator parameter 'density' expects a number");
            }
        } else {
            throw CircuitError("unknown generator parameter '" + std::string(key) + "'");
        }
    }
    return spec;
}

std::string format_generator_spec(const GeneratorSpec &spec) {
    std::string out(family_name(spec.family));
    switch (spec.family) {
        case CircuitFamily::random:
            out += ":qubits=" + std::to_string(spec.qubits) + ",slices=" + std::to_string(spec.slices) +
                   ",density=" + format_double(spec.density) + ",seed=" + std::to_string(spec.seed);
            break;
        case CircuitFamily::qaoa:
            out += ":qubits=" + std::to_string(spec.qubits) + ",layers=" + std::to_string(spec.layers) +
                   ",degree=" + std::to_string(spec.degree) + ",seed=" + std::to_string(spec.seed);
            break;
        case CircuitFamily::cuccaro:
            out += ":bits=" + std::to_string(spec.bits > 0 ? spec.bits : (spec.qubits - 2) / 2);
            break;
    }
    return out;
}

Circuit generate(const GeneratorSpec &spec) {
    switch (spec.family) {
        case CircuitFamily::random:
            return gen_random(spec.qubits, spec.slices, spec.density, spec.seed);
        case CircuitFamily::qaoa:
            return gen_qaoa(spec.qubits, spec.layers, spec.degree, spec.seed);
        case CircuitFamily::cuccaro: {
            int bits = spec.bits;
            if (bits <= 0) {
                if (spec.qubits < 4 || spec.qubits % 2 != 0) {
                    throw CircuitError("cuccaro adder needs an even qubit count >= 4, got " +
                                       std::to_string(spec.qubits));
                }
                bits = (spec.qubits - 2) / 2;
            }
            return gen_cuccaro(bits);
        }
    }
    throw CircuitError("unknown circuit family");
}

}  // namespace qpart
