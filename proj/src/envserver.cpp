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

#include "qpart/envserver.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <atomic>
#include <cerrno>
#include <cstring>
#include <istream>
#include <mutex>
#include <ostream>
#include <set>
#include <stdexcept>
#include <thread>
#include <vector>

#include "qpart/json_io.hpp"

namespace qpart {

namespace {

class RequestError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

json mask_to_json(const ActionMask &mask) {
    json out = json::array();
    for (std::uint8_t m : mask) {
        out.push_back(m != 0);
    }
    return out;
}

json info_to_json(const StepInfo &info) {
    return json{{"slice", info.slice},
                {"moves", info.moves},
                {"actions_used", info.actions_used},
                {"episode_length", info.episode_length}};
}

std::string dump_line(const json &j) {
    // replace invalid UTF-8 from echoed input instead of throwing
    return j.dump(-1, ' ', false, json::error_handler_t::replace);
}

}  // namespace

std::string Session::handle(std::string_view line) {
    json response = json::object();
    json request;
    try {
        request = json::parse(line);
    } catch (const json::parse_error &e) {
        response["env_id"] = nullptr;
        response["error"] = std::string("malformed request: ") + e.what();
        return dump_line(response);
    }

    if (request.is_object() && request.contains("id")) {
        response["id"] = request["id"];
    }
    response["env_id"] = nullptr;
    try {
        if (!request.is_object()) {
            throw RequestError("request must be a JSON object");
        }
        auto cmd_it = request.find("cmd");
        if (cmd_it == request.end() || !cmd_it->is_string()) {
            throw RequestError("request needs a string 'cmd'");
        }
        const std::string cmd = cmd_it->get<std::string>();

        if (cmd == "make") {
            auto cfg = request.find("config");
            if (cfg == request.end()) {
                throw RequestError("make needs 'config'");
            }
            auto env = std::make_unique<Environment>(env_config_from_json(*cfg));
            const std::int64_t id = next_id_++;
            response["env_id"] = id;
            response["obs_size"] = env->observation_size();
            response["num_actions"] = env->num_actions();
            response["num_slices"] = env->num_slices();
            envs_.emplace(id, std::move(env));
            return dump_line(response);
        }
        if (cmd == "shutdown") {
            shutdown_ = true;
            response.erase("env_id");
            response["shutdown"] = true;
            return dump_line(response);
        }
        if (cmd != "reset" && cmd != "step" && cmd != "mask" && cmd != "close") {
            throw RequestError("unknown cmd '" + cmd + "'");
        }

        auto id_it = request.find("env_id");
        if (id_it == request.end() || !id_it->is_number_integer()) {
            throw RequestError(cmd + " needs an integer 'env_id'");
        }
        const auto id = id_it->get<std::int64_t>();
        response["env_id"] = id;
        auto env_it = envs_.find(id);
        if (env_it == envs_.end()) {
            throw RequestError("unknown env_id " + std::to_string(id));
        }
        Environment &env = *env_it->second;

        if (cmd == "reset") {
            std::optional<std::uint64_t> seed;
            if (auto s = request.find("seed"); s != request.end() && !s->is_null()) {
                if (!s->is_number_unsigned()) {
                    throw RequestError("'seed' must be a non-negative integer");
                }
                seed = s->get<std::uint64_t>();
            }
            ResetResult r = env.reset(seed);
            response["obs"] = r.observation;
            response["mask"] = mask_to_json(r.mask);
        } else if (cmd == "step") {
            auto a = request.find("action");
            if (a == request.end() || !a->is_number_integer()) {
                throw RequestError("step needs an integer 'action'");
            }
            const auto action = a->get<std::int64_t>();
            if (action < 0 || action >= env.num_actions()) {
                throw RequestError("action out of range: " + std::to_string(action) + " (valid range 0.." +
                                   std::to_string(env.num_actions() - 1) + ")");
            }
            StepResult r = env.step(static_cast<int>(action));
            response["obs"] = r.observation;
            response["mask"] = mask_to_json(r.mask);
            response["reward"] = r.reward;
            response["terminated"] = r.terminated;
            response["truncated"] = r.truncated;
            response["info"] = info_to_json(r.info);
        } else if (cmd == "mask") {
            response["mask"] = mask_to_json(env.mask());
        } else {
            envs_.erase(env_it);
            response["closed"] = true;
        }
    } catch (const std::exception &e) {
        json err = json::object();
        if (response.contains("id")) {
            err["id"] = response["id"];
        }
        err["env_id"] = response["env_id"];
        err["error"] = e.what();
        return dump_line(err);
    }
    return dump_line(response);
}

bool serve_stream(std::istream &in, std::ostream &out) {
    Session session;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.find_first_not_of(" \t") == std::string::npos) {
            continue;
        }
        out << session.handle(line) << '\n';
        out.flush();
        if (session.shutdown_requested()) {
            return true;
        }
    }
    return false;
}

namespace {

bool send_all(int fd, std::string_view data) {
    while (!data.empty()) {
        const ssize_t n = ::send(fd, data.data(), data.size(), MSG_NOSIGNAL);
        if (n < 0 && errno == EINTR) {
            continue;
        }
        if (n <= 0) {
            return false;
        }
        data.remove_prefix(static_cast<std::size_t>(n));
    }
    return true;
}

// Returns true when the client asked for a shutdown.
bool serve_connection(int fd) {
    Session session;
    std::string buffer;
    char chunk[65536];
    for (;;) {
        const ssize_t n = ::recv(fd, chunk, sizeof chunk, 0);
        if (n < 0 && errno == EINTR) {
            continue;
        }
        if (n <= 0) {
            return false;
        }
        buffer.append(chunk, static_cast<std::size_t>(n));
        std::size_t start = 0;
        for (std::size_t nl; (nl = buffer.find('\n', start)) != std::string::npos; start = nl + 1) {
            std::string_view line(buffer.data() + start, nl - start);
            if (!line.empty() && line.back() == '\r') {
                line.remove_suffix(1);
            }
            if (line.find_first_not_of(" \t") == std::string_view::npos) {
                continue;
            }
            if (!send_all(fd, session.handle(line) + "\n")) {
                return false;
            }
            if (session.shutdown_requested()) {
                return true;
            }
        }
        buffer.erase(0, start);
    }
}

std::runtime_error sys_error(const std::string &what) {
    return std::runtime_error(what + ": " + std::strerror(errno));
}

}  // namespace

void serve_tcp(int port, const std::string &host, const std::function<void(int)> &on_ready) {
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(static_cast<std::uint16_t>(port));
    if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
        throw std::runtime_error("not an IPv4 address: " + host);
    }
    const int listener = ::socket(AF_INET, SOCK_STREAM, 0);
    if (listener < 0) {
        throw sys_error("socket");
    }
    const int one = 1;
    ::setsockopt(listener, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
    if (::bind(listener, reinterpret_cast<sockaddr *>(&addr), sizeof addr) != 0 || ::listen(listener, 16) != 0) {
        const auto err = sys_error("bind " + host + ":" + std::to_string(port));
        ::close(listener);
        throw err;
    }
    socklen_t len = sizeof addr;
    ::getsockname(listener, reinterpret_cast<sockaddr *>(&addr), &len);
    if (on_ready) {
        on_ready(ntohs(addr.sin_port));
    }

    std::atomic<bool> stop{false};
    std::mutex mu;
    std::set<int> open;
    std::vector<std::thread> workers;
    while (!stop) {
        pollfd p{listener, POLLIN, 0};
        const int ready = ::poll(&p, 1, 100);
        if (ready <= 0) {
            continue;
        }
        const int fd = ::accept(listener, nullptr, nullptr);
        if (fd < 0) {
            continue;
        }
        {
            std::lock_guard lock(mu);
            open.insert(fd);
        }
        workers.emplace_back([fd, &stop, &mu, &open] {
            const bool shutdown = serve_connection(fd);
            std::lock_guard lock(mu);
            open.erase(fd);
            ::close(fd);
            if (shutdown) {
                stop = true;
                for (int other : open) {
                    ::shutdown(other, SHUT_RDWR);
                }
            }
        });
    }
    ::close(listener);
    {
        std::lock_guard lock(mu);
        for (int other : open) {
            ::shutdown(other, SHUT_RDWR);
        }
    }
    for (std::thread &t : workers) {
        t.join();
    }
}

}  // namespace qpart
