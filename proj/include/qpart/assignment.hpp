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

#include <compare>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qpart/circuit.hpp"

namespace qpart {

class PartitionError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// k identical cores holding `capacity` qubits each.
struct CoreConfig {
    int num_cores = 2;
    int capacity = 1;

    /// Throws PartitionError unless num_cores >= 2 divides num_qubits.
    static CoreConfig for_qubits(int num_qubits, int num_cores);

    int num_qubits() const { return num_cores * capacity; }
    bool operator==(const CoreConfig &) const = default;
};

/// Map from qubit to core. Ordered lexicographically by the core vector.
class Assignment {
  public:
    Assignment() = default;
    Assignment(std::vector<int> core_of, int num_cores);

    int num_qubits() const { return static_cast<int>(core_of_.size()); }
    int num_cores() const { return num_cores_; }
    int core(Qubit q) const { return core_of_[static_cast<std::size_t>(q)]; }
    std::span<const int> cores() const { return core_of_; }

    void swap(Qubit a, Qubit b) { std::swap(core_of_[a], core_of_[b]); }

    /// Number of qubits on each core.
    std::vector<int> loads() const;
    bool is_balanced(const CoreConfig &cores) const;

    std::string to_string() const;

    bool operator==(const Assignment &) const = default;
    auto operator<=>(const Assignment &other) const { return core_of_ <=> other.core_of_; }

  private:
    std::vector<int> core_of_;
    int num_cores_ = 0;
};

}  // namespace qpart
