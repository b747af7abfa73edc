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

// Line-delimited JSON protocol, one request and one response per line.
//
//   {"cmd": "make", "config": {...}}            -> {"env_id", "obs_size", "num_actions", "num_slices"}
//   {"cmd": "reset", "env_id": 0, "seed": 7}    -> {"env_id", "obs", "mask"}
//   {"cmd": "step", "env_id": 0, "action": 3}   -> {"env_id", "obs", "mask", "reward",
//                                                   "terminated", "truncated", "info"}
//   {"cmd": "mask", "env_id": 0}                -> {"env_id", "mask"}
//   {"cmd": "close", "env_id": 0}               -> {"env_id", "closed": true}
//   {"cmd": "shutdown"}                         -> {"shutdown": true}
//
// Failures answer {"env_id": <id or null>, "error": "..."} and leave every
// environment untouched. An "id" member of the request is echoed back.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <string_view>

#include "qpart/environment.hpp"

namespace qpart {

/// Environments owned by one connection.
class Session {
  public:
    /// Answers one request line (without the trailing newline).
    std::string handle(std::string_view line);

    bool shutdown_requested() const { return shutdown_; }
    std::size_t open_envs() const { return envs_.size(); }

  private:
    std::map<std::int64_t, std::unique_ptr<Environment>> envs_;
    std::int64_t next_id_ = 0;
    bool shutdown_ = false;
};

/// Serves requests from `in` until end of input or `shutdown`. Returns true
/// when a shutdown was requested.
bool serve_stream(std::istream &in, std::ostream &out);

/// Listens on host:port (port 0 picks a free one) and serves each connection
/// on its own thread until some client sends `shutdown`. `on_ready` receives
/// the bound port once the socket is listening.
void serve_tcp(int port, const std::string &host = "127.0.0.1",
               const std::function<void(int)> &on_ready = nullptr);

}  // namespace qpart
