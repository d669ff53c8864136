// Copyright 2026 The Arianna Authors.
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

#ifndef ARIANNA_TESTS_SERVICE_HARNESS_H_
#define ARIANNA_TESTS_SERVICE_HARNESS_H_

#include <filesystem>
#include <memory>
#include <stdexcept>
#include <string>
#include <thread>

#include "arianna/http_service.h"
#include "arianna/report_json.h"
#include "httplib.h"

namespace arianna::testing {

struct HttpReply {
  int status = 0;
  Json body;
};

// Runs a ServiceServer on an ephemeral loopback port for the lifetime of
// the object.
class ServiceHarness {
 public:
  explicit ServiceHarness(const std::filesystem::path& root) {
    ServiceConfig config;
    config.root = root;
    server_ = std::make_unique<ServiceServer>(config);
    port_ = server_->Bind("127.0.0.1", 0);
    if (port_ <= 0) throw std::runtime_error("could not bind a test port");
    thread_ = std::thread([this] { server_->Listen(); });
    server_->WaitUntilReady();
  }
  ~ServiceHarness() {
    server_->Stop();
    thread_.join();
  }
  ServiceHarness(const ServiceHarness&) = delete;
  ServiceHarness& operator=(const ServiceHarness&) = delete;

  int port() const { return port_; }

  httplib::Client Client() const {
    httplib::Client client("127.0.0.1", port_);
    client.set_connection_timeout(5);
    client.set_read_timeout(10);
    return client;
  }

  HttpReply Get(const std::string& path, const httplib::Headers& headers = {}) const {
    return Convert(Client().Get(path, headers));
  }

  HttpReply Post(const std::string& path, const Json& body) const {
    return Convert(Client().Post(path, body.dump(), "application/json"));
  }

  HttpReply PostRaw(const std::string& path, const std::string& body,
                    const std::string& content_type) const {
    return Convert(Client().Post(path, body, content_type));
  }

 private:
  static HttpReply Convert(const httplib::Result& result) {
    if (!result) return {-1, Json()};
    HttpReply reply{result->status, Json()};
    if (!result->body.empty()) {
      reply.body = Json::parse(result->body, nullptr, false);
    }
    return reply;
  }

  std::unique_ptr<ServiceServer> server_;
  std::thread thread_;
  int port_ = -1;
};

}  // namespace arianna::testing

#endif  // ARIANNA_TESTS_SERVICE_HARNESS_H_
