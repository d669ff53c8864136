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

// JSON-over-HTTP API for models, scoring and cleaning sessions.
//
//   POST /v1/models                      build and store a model
//   GET  /v1/models                      list stored models
//   GET  /v1/models/{id}                 metadata, or ?context=&order= lookup
//   POST /v1/score                       score text against a model
//   POST /v1/sessions                    open a cleaning session
//   GET  /v1/sessions/{id}               session state
//   POST /v1/sessions/{id}/edits         apply an edit (needs expected_seq)
//   POST /v1/sessions/{id}/undo          append a compensating edit
//   GET  /v1/sessions/{id}/export        session document
//
// Errors are {"code", "message", "detail"}. Models live under
// <root>/models as arianna-model v1 files and sessions under
// <root>/sessions as session documents.

#ifndef ARIANNA_HTTP_SERVICE_H_
#define ARIANNA_HTTP_SERVICE_H_

#include <cstddef>
#include <filesystem>
#include <memory>
#include <string>

namespace httplib {
class Server;
}  // namespace httplib

namespace arianna {

struct ServiceConfig {
  std::filesystem::path root = "arianna-store";
  std::size_t max_body_bytes = 64u << 20;
  // GET /v1/models/{id} inlines entries only up to this many.
  std::size_t entry_listing_cap = 1000;
};

// Root from ARIANNA_MODEL_DIR, falling back to ./arianna-store.
std::filesystem::path DefaultServiceRoot();

class Service {
 public:
  explicit Service(ServiceConfig config);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  // Installs every route on `server`.
  void Register(httplib::Server& server);

  const ServiceConfig& config() const;

 private:
  struct State;
  std::unique_ptr<State> state_;
};

// A Service bound to a listening socket, for the CLI and for tests.
class ServiceServer {
 public:
  explicit ServiceServer(ServiceConfig config);
  ~ServiceServer();

  // Returns the bound port; `port` 0 picks a free one. Returns -1 on failure.
  int Bind(const std::string& host, int port);
  // Blocks until Stop() is called.
  bool Listen();
  void Stop();
  void WaitUntilReady();

 private:
  std::unique_ptr<httplib::Server> server_;
  std::unique_ptr<Service> service_;
};

}  // namespace arianna

#endif  // ARIANNA_HTTP_SERVICE_H_
