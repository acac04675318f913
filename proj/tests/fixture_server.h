// Copyright 2026 The Simile Miner Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Local HTTP server over tests/fixtures/site for crawler tests. Pages are
// reachable as http://localhost:PORT/...; links written as
// 127.0.0.1:{{PORT}} point at the same server under a different host
// name, so any out-of-domain request shows up in the Host header log.

#ifndef SIMILE_TESTS_FIXTURE_SERVER_H_
#define SIMILE_TESTS_FIXTURE_SERVER_H_

#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "httplib.h"

namespace simile::testing {

class FixtureServer {
 public:
  explicit FixtureServer(std::filesystem::path root) : root_(std::move(root)) {
    server_.Get(".*", [this](const httplib::Request &req, httplib::Response &res) {
      Handle(req, res);
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~FixtureServer() {
    server_.stop();
    thread_.join();
  }

  int port() const { return port_; }
  std::string base() const { return "http://localhost:" + std::to_string(port_); }

  // (Host header, path) of every request, in arrival order.
  std::vector<std::pair<std::string, std::string>> requests() const {
    std::lock_guard lock(mu_);
    return requests_;
  }

  int OutOfDomainRequests() const {
    int n = 0;
    for (const auto &[host, path] : requests()) {
      if (host.rfind("localhost", 0) != 0) ++n;
    }
    return n;
  }

  int RequestsFor(const std::string &path) const {
    int n = 0;
    for (const auto &r : requests()) n += r.second == path;
    return n;
  }

 private:
  void Handle(const httplib::Request &req, httplib::Response &res) {
    {
      std::lock_guard lock(mu_);
      requests_.emplace_back(req.get_header_value("Host"), req.path);
    }
    std::string path = req.path == "/" ? "/index.html" : req.path;
    if (path.find("..") != std::string::npos) {
      res.status = 400;
      return;
    }
    if (path == "/redirect") {
      res.status = 301;
      res.set_header("Location", "/a.html");
      return;
    }
    std::ifstream in(root_ / path.substr(1), std::ios::binary);
    if (!in) {
      res.status = 404;
      res.set_content("not found", "text/plain");
      return;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string body = buf.str();
    const std::string marker = "{{PORT}}";
    for (size_t p = body.find(marker); p != std::string::npos;
         p = body.find(marker, p)) {
      body.replace(p, marker.size(), std::to_string(port_));
    }
    std::string type = "text/html";
    if (path.size() > 4 && path.compare(path.size() - 4, 4, ".txt") == 0) {
      type = "text/plain";
    } else if (path == "/b.html") {
      type = "text/html; charset=windows-1250";
    }
    res.set_content(body, type);
  }

  std::filesystem::path root_;
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
  mutable std::mutex mu_;
  std::vector<std::pair<std::string, std::string>> requests_;
};

}  // namespace simile::testing

#endif  // SIMILE_TESTS_FIXTURE_SERVER_H_
