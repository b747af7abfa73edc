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

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <gtest/gtest.h>

#include <future>
#include <sstream>
#include <thread>

#include "qpart/envserver.hpp"
#include "qpart/json_io.hpp"
#include "qpart/policies.hpp"

namespace qpart {
namespace {

json call(Session &s, const json &req) { return json::parse(s.handle(req.dump())); }

std::vector<bool> bools(const ActionMask &m) { return {m.begin(), m.end()}; }

const json kSmall = {{"slices", {{"qubits", 4}, {"slices", {{{0, 1}}, {{0, 2}}}}}}, {"cores", 2}};

TEST(Server, MakeResetSizes) {
    Session s;
    json made = call(s, {{"cmd", "make"}, {"config", kSmall}});
    EXPECT_EQ(made["env_id"], 0);
    EXPECT_EQ(made["obs_size"], 23);
    EXPECT_EQ(made["num_actions"], 11);
    json r = call(s, {{"cmd", "reset"}, {"env_id", 0}});
    EXPECT_EQ(r["obs"].size(), 23u);
    EXPECT_EQ(r["mask"].size(), 11u);
    json cfg4 = {{"slices", {{"qubits", 4}, {"slices", {json::array()}}}}, {"cores", 4}};
    json made4 = call(s, {{"cmd", "make"}, {"config", cfg4}});
    EXPECT_EQ(made4["env_id"], 1);
    EXPECT_EQ(call(s, {{"cmd", "reset"}, {"env_id", 1}})["obs"].size(), 39u);
}

TEST(Server, ScriptedSessionEqualsInProcess) {
    const json cfg = {{"generator", "random:qubits=8,slices=20"}, {"cores", 2}, {"mask", "soft"}, {"budget", 100000}};
    Session s;
    ASSERT_EQ(call(s, {{"cmd", "make"}, {"config", cfg}})["env_id"], 0);
    Environment env(env_config_from_json(cfg));
    json r = call(s, {{"cmd", "reset"}, {"env_id", 0}, {"seed", 5}});
    ResetResult local = env.reset(5);
    ASSERT_EQ(r["obs"].get<Observation>(), local.observation);
    ASSERT_EQ(r["mask"].get<std::vector<bool>>(), bools(local.mask));
    Rng rng(77);
    ActionMask mask = local.mask;
    for (int i = 0; i < 100; ++i) {
        if (env.done()) {
            ResetResult rr = env.reset(5);
            json rj = call(s, {{"cmd", "reset"}, {"env_id", 0}, {"seed", 5}});
            ASSERT_EQ(rj["obs"].get<Observation>(), rr.observation);
            mask = rr.mask;
        }
        const int a = random_policy(mask, rng);
        StepResult want = env.step(a);
        json got = call(s, {{"cmd", "step"}, {"env_id", 0}, {"action", a}});
        ASSERT_FALSE(got.contains("error")) << got.dump();
        ASSERT_EQ(got["obs"].get<Observation>(), want.observation);
        ASSERT_EQ(got["reward"].get<double>(), want.reward);
        ASSERT_EQ(got["terminated"].get<bool>(), want.terminated);
        ASSERT_EQ(got["truncated"].get<bool>(), want.truncated);
        ASSERT_EQ(got["mask"].get<std::vector<bool>>(), bools(want.mask));
        ASSERT_EQ(got["info"]["slice"], want.info.slice);
        ASSERT_EQ(got["info"]["moves"], want.info.moves);
        ASSERT_EQ(got["info"]["actions_used"], want.info.actions_used);
        ASSERT_EQ(got["info"]["episode_length"], want.info.episode_length);
        mask = want.mask;
    }
}

TEST(Server, ErrorsLeaveStateUnchanged) {
    Session s;
    call(s, {{"cmd", "make"}, {"config", kSmall}});
    call(s, {{"cmd", "make"}, {"config", kSmall}});
    call(s, {{"cmd", "reset"}, {"env_id", 0}});
    call(s, {{"cmd", "reset"}, {"env_id", 1}});
    const json before = call(s, {{"cmd", "mask"}, {"env_id", 0}});

    json e = call(s, {{"cmd", "step"}, {"env_id", 0}, {"action", 11}});
    EXPECT_EQ(e["env_id"], 0);
    EXPECT_NE(e["error"].get<std::string>().find("action out of range"), std::string::npos);
    EXPECT_EQ(call(s, {{"cmd", "mask"}, {"env_id", 0}}), before);

    json bad = json::parse(s.handle("{not json"));
    EXPECT_TRUE(bad["env_id"].is_null());
    EXPECT_NE(bad["error"].get<std::string>().find("malformed"), std::string::npos);
    EXPECT_TRUE(call(s, {{"cmd", "step"}, {"env_id", 42}, {"action", 0}}).contains("error"));
    EXPECT_TRUE(call(s, {{"cmd", "fly"}}).contains("error"));
    EXPECT_TRUE(call(s, {{"cmd", "step"}, {"env_id", 0}}).contains("error"));
    EXPECT_TRUE(call(s, {{"cmd", "make"}, {"config", {{"cores", 2}}}}).contains("error"));
    EXPECT_TRUE(json::parse(s.handle("[1,2]")).contains("error"));
    EXPECT_EQ(call(s, {{"cmd", "mask"}, {"env_id", 0}}), before);

    // finish env 1, then stepping it again errors without changing it
    call(s, {{"cmd", "step"}, {"env_id", 1}, {"action", 10}});
    call(s, {{"cmd", "step"}, {"env_id", 1}, {"action", 5}});
    json last = call(s, {{"cmd", "step"}, {"env_id", 1}, {"action", 10}});
    ASSERT_TRUE(last["terminated"].get<bool>());
    json again = call(s, {{"cmd", "step"}, {"env_id", 1}, {"action", 10}});
    EXPECT_NE(again["error"].get<std::string>().find("finished"), std::string::npos);

    EXPECT_TRUE(call(s, {{"cmd", "close"}, {"env_id", 1}})["closed"].get<bool>());
    EXPECT_TRUE(call(s, {{"cmd", "mask"}, {"env_id", 1}}).contains("error"));
    EXPECT_EQ(s.open_envs(), 1u);
    EXPECT_EQ(call(s, {{"cmd", "mask"}, {"env_id", 0}, {"id", "abc"}})["id"], "abc");
}

TEST(Server, StreamInOrderAndShutdown) {
    std::istringstream in(
        "{\"cmd\":\"make\",\"config\":{\"generator\":\"random:qubits=4,slices=3\"}}\n"
        "\n"
        "{\"cmd\":\"reset\",\"env_id\":0}\n"
        "{\"cmd\":\"shutdown\"}\n"
        "{\"cmd\":\"reset\",\"env_id\":0}\n");
    std::ostringstream out;
    EXPECT_TRUE(serve_stream(in, out));
    std::istringstream lines(out.str());
    std::vector<json> responses;
    for (std::string l; std::getline(lines, l);) responses.push_back(json::parse(l));
    ASSERT_EQ(responses.size(), 3u);
    EXPECT_EQ(responses[0]["env_id"], 0);
    EXPECT_TRUE(responses[1].contains("obs"));
    EXPECT_TRUE(responses[2]["shutdown"].get<bool>());

    std::istringstream eof("{\"cmd\":\"mask\",\"env_id\":3}\n");
    std::ostringstream out2;
    EXPECT_FALSE(serve_stream(eof, out2));
}

int connect_to(int port) {
    const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(static_cast<std::uint16_t>(port));
    ::inet_pton(AF_INET, "127.0.0.1", &addr.sin_addr);
    if (::connect(fd, reinterpret_cast<sockaddr *>(&addr), sizeof addr) != 0) {
        ::close(fd);
        return -1;
    }
    return fd;
}

std::string round_trip(int fd, const std::string &line) {
    const std::string msg = line + "\n";
    EXPECT_EQ(::send(fd, msg.data(), msg.size(), 0), static_cast<ssize_t>(msg.size()));
    std::string out;
    char c;
    while (::recv(fd, &c, 1, 0) == 1 && c != '\n') out += c;
    return out;
}

TEST(Server, TcpConnectionsOwnTheirEnvs) {
    std::promise<int> ready;
    auto port_future = ready.get_future();
    std::thread server([&] { serve_tcp(0, "127.0.0.1", [&](int p) { ready.set_value(p); }); });
    const int port = port_future.get();
    const int a = connect_to(port);
    const int b = connect_to(port);
    ASSERT_GE(a, 0);
    ASSERT_GE(b, 0);
    const std::string make = json{{"cmd", "make"}, {"config", kSmall}}.dump();
    EXPECT_EQ(json::parse(round_trip(a, make))["env_id"], 0);
    EXPECT_EQ(json::parse(round_trip(b, make))["env_id"], 0);
    EXPECT_TRUE(json::parse(round_trip(a, R"({"cmd":"reset","env_id":0})")).contains("obs"));
    // b never reset its env
    EXPECT_TRUE(json::parse(round_trip(b, R"({"cmd":"step","env_id":0,"action":10})")).contains("error"));
    EXPECT_TRUE(json::parse(round_trip(b, R"({"cmd":"shutdown"})"))["shutdown"].get<bool>());
    server.join();
    ::close(a);
    ::close(b);
}

}  // namespace
}  // namespace qpart
