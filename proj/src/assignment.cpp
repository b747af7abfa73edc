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

#include "qpart/assignment.hpp"

#include <algorithm>

namespace qpart {

CoreConfig CoreConfig::for_qubits(int num_qubits, int num_cores) {
    if (num_cores < 2) {
        throw PartitionError("need at least 2 cores, got " + std::to_string(num_cores));
    }
    if (num_qubits <= 0 || num_qubits % num_cores != 0) {
        throw PartitionError("Q not divisible by k: " + std::to_string(num_qubits) + " qubits on " +
                             std::to_string(num_cores) + " cores");
    }
    return CoreConfig{num_cores, num_qubits / num_cores};
}

Assignment::Assignment(std::vector<int> core_of, int num_cores)
    : core_of_(std::move(core_of)), num_cores_(num_cores) {
    for (int c : core_of_) {
        if (c < 0 || c >= num_cores_) {
            throw PartitionError("core " + std::to_string(c) + " out of range for " + std::to_string(num_cores_) +
                                 " cores");
        }
    }
}

std::vector<int> Assignment::loads() const {
    std::vector<int> out(static_cast<std::size_t>(num_cores_), 0);
    for (int c : core_of_) {
        ++out[static_cast<std::size_t>(c)];
    }
    return out;
}

bool Assignment::is_balanced(const CoreConfig &cores) const {
    if (num_cores_ != cores.num_cores || num_qubits() != cores.num_qubits()) {
        return false;
    }
    auto l = loads();
    return std::all_of(l.begin(), l.end(), [&](int n) { return n == cores.capacity; });
}

std::string Assignment::to_string() const {
    std::string out = "[";
    for (std::size_t i = 0; i < core_of_.size(); ++i) {
        if (i) {
            out += ",";
        }
        out += std::to_string(core_of_[i]);
    }
    return out + "]";
}

}  // namespace qpart
