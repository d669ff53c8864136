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

#include "arianna/http_service.h"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <system_error>
#include <utility>
#include <vector>

#include "arianna/corpus_io.h"
#include "arianna/error.h"
#include "arianna/model_io.h"
#include "arianna/ngram_model.h"
#include "arianna/report_json.h"
#include "arianna/scorer.h"
#include "arianna/session.h"
#include "httplib.h"

namespace arianna {
namespace fs = std::filesystem;

namespace {

constexpr char kJsonType[] = "application/json";

struct Reply {
  int status = 200;
  Json body;
};

// Thrown by handlers for errors that are not library errors.
struct HttpError {
  int status;
  std::string code;
  std::string message;
  Json detail = Json::object();
};

Json ErrorBody(std::string_view code, std::string_view message,
               Json detail = Json::object()) {
  return Json{{"code", code}, {"message", message}, {"detail", std::move(detail)}};
}

int StatusFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEncoding:
    case ErrorCode::kOutOfRange:
    case ErrorCode::kInvalidEdit:
    case ErrorCode::kNothingToUndo:
      return 422;
    case ErrorCode::kIo:
    case ErrorCode::kReplayMismatch:
      return 500;
    default:
      return 400;
  }
}

bool IsSafeId(std::string_view id) {
  return IsValidModelName(id) && id.find("..") == std::string_view::npos;
}

bool AcceptsJson(const httplib::Request& req) {
  if (!req.has_header("Accept")) return true;
  const std::string accept = req.get_header_value("Accept");
  return accept.empty() || accept.find("application/json") != std::string::npos ||
         accept.find("*/*") != std::string::npos ||
         accept.find("application/*") != std::string::npos;
}

Json ParseBody(const httplib::Request& req) {
  if (req.body.empty()) return Json::object();
  Json doc = Json::parse(req.body, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw HttpError{400, "invalid-json", "request body is not a JSON object"};
  }
  return doc;
}

template <typename T>
T Field(const Json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) {
    throw HttpError{400, "missing-field", std::string("missing field '") + key + "'"};
  }
  try {
    return it->get<T>();
  } catch (const Json::exception&) {
    throw HttpError{400, "invalid-field", std::string("field '") + key + "' has the wrong type"};
  }
}

template <typename T>
T FieldOr(const Json& doc, const char* key, T fallback) {
  if (!doc.contains(key) || doc[key].is_null()) return fallback;
  return Field<T>(doc, key);
}

OrderSet OrdersFrom(const Json& value) {
  if (value.is_string()) return OrderSet::Parse(value.get<std::string>());
  if (value.is_array()) {
    std::vector<int> orders;
    for (const Json& v : value) {
      if (!v.is_number_integer()) {
        throw HttpError{400, "invalid-field", "orders must be integers"};
      }
      orders.push_back(v.get<int>());
    }
    return OrderSet::FromVector(orders);
  }
  throw HttpError{400, "invalid-field", "orders must be a list or \"3,4,5\""};
}

Json ModelSummary(const std::string& id, const ConsistencyModel& model) {
  Json counts = Json::object();
  for (const auto& [order, n] : model.EntryCounts()) {
    counts[std::to_string(order)] = n;
  }
  return Json{{"id", id},
              {"name", model.name()},
              {"kind", ModelKindName(model.kind())},
              {"orders", model.orders().Ascending()},
              {"min_frequency", model.min_frequency()},
              {"tokens", model.meta().token_count},
              {"checksum", model.meta().source_checksum},
              {"entry_counts", std::move(counts)},
              {"entries_total", model.size()}};
}

Json HistoryPointJson(const HistoryPoint& h) {
  return Json{{"seq", h.seq}, {"consistency", h.report.consistency()}};
}

}  // namespace

fs::path DefaultServiceRoot() {
  if (const char* dir = std::getenv("ARIANNA_MODEL_DIR"); dir && *dir) {
    return dir;
  }
  return "arianna-store";
}

struct Service::State {
  struct SessionSlot {
    std::mutex mu;
    std::optional<CleaningSession> session;
  };

  explicit State(ServiceConfig c) : config(std::move(c)) {
    std::error_code ec;
    fs::create_directories(ModelDir(), ec);
    fs::create_directories(SessionDir(), ec);
  }

  fs::path ModelDir() const { return config.root / "models"; }
  fs::path SessionDir() const { return config.root / "sessions"; }
  fs::path ModelPath(const std::string& id) const {
    return ModelDir() / (id + ".model");
  }
  fs::path SessionPath(const std::string& id) const {
    return SessionDir() / (id + ".json");
  }

  std::shared_ptr<const ConsistencyModel> FindModel(const std::string& id) {
    if (!IsSafeId(id)) return nullptr;
    std::lock_guard<std::mutex> lock(models_mu);
    if (auto it = models.find(id); it != models.end()) return it->second;
    std::error_code ec;
    if (!fs::is_regular_file(ModelPath(id), ec)) return nullptr;
    auto model = std::make_shared<const ConsistencyModel>(
        LoadModel(ModelPath(id)).model);
    models.emplace(id, model);
    return model;
  }

  std::shared_ptr<const ConsistencyModel> RequireModel(const std::string& id) {
    auto model = FindModel(id);
    if (!model) {
      throw HttpError{404, "unknown-model", "no model with id '" + id + "'"};
    }
    return model;
  }

  std::string StoreModel(ConsistencyModel model) {
    const std::string bytes = SerializeModel(model);
    const std::string id = model.name() + "-" + Sha256Hex(bytes).substr(0, 12);
    std::lock_guard<std::mutex> lock(models_mu);
    if (models.count(id) == 0) {
      std::error_code ec;
      if (!fs::exists(ModelPath(id), ec)) WriteFileBytes(ModelPath(id), bytes);
      models.emplace(id, std::make_shared<const ConsistencyModel>(std::move(model)));
    }
    return id;
  }

  std::shared_ptr<SessionSlot> FindSession(const std::string& id) {
    if (!IsSafeId(id)) return nullptr;
    std::lock_guard<std::mutex> lock(sessions_mu);
    if (auto it = sessions.find(id); it != sessions.end()) return it->second;
    std::error_code ec;
    if (!fs::is_regular_file(SessionPath(id), ec)) return nullptr;
    Json doc = Json::parse(ReadFileBytes(SessionPath(id)), nullptr, false);
    if (doc.is_discarded()) {
      throw Error(ErrorCode::kIo, "stored session " + id + " is unreadable");
    }
    const std::string model_id = doc.at("model").at("ref").get<std::string>();
    auto model = FindModel(model_id);
    if (!model) {
      throw Error(ErrorCode::kIo, "model " + model_id + " of session " + id +
                                      " is missing");
    }
    auto slot = std::make_shared<SessionSlot>();
    slot->session.emplace(ImportSession(doc, std::move(model)));
    sessions.emplace(id, slot);
    return slot;
  }

  std::shared_ptr<SessionSlot> RequireSession(const std::string& id) {
    auto slot = FindSession(id);
    if (!slot) {
      throw HttpError{404, "unknown-session", "no session with id '" + id + "'"};
    }
    return slot;
  }

  void Persist(const CleaningSession& s) {
    WriteFileBytes(SessionPath(s.id()), ExportSession(s).dump(2) + "\n");
  }

  Json SessionState(const CleaningSession& s) const {
    Json history = Json::array();
    for (const HistoryPoint& h : s.score_history()) {
      history.push_back(HistoryPointJson(h));
    }
    return Json{{"id", s.id()},
                {"model_id", s.model_ref()},
                {"seq", s.seq()},
                {"text", s.CurrentText()},
                {"words", s.current_words()},
                {"can_undo", s.CanUndo()},
                {"report", ReportToJson(s.latest())},
                {"history", std::move(history)}};
  }

  ServiceConfig config;
  std::mutex models_mu;
  std::map<std::string, std::shared_ptr<const ConsistencyModel>> models;
  std::mutex sessions_mu;
  std::map<std::string, std::shared_ptr<SessionSlot>> sessions;
};

Service::Service(ServiceConfig config)
    : state_(std::make_unique<State>(std::move(config))) {}

Service::~Service() = default;

const ServiceConfig& Service::config() const { return state_->config; }

void Service::Register(httplib::Server& server) {
  State& st = *state_;
  using Handler = std::function<Reply(const httplib::Request&)>;

  auto wrap = [](Handler handler) {
    return [handler = std::move(handler)](const httplib::Request& req,
                                          httplib::Response& res) {
      Reply reply;
      if (!AcceptsJson(req)) {
        reply = {406, ErrorBody("not-acceptable",
                                "responses are only available as application/json")};
      } else {
        try {
          reply = handler(req);
        } catch (const HttpError& e) {
          reply = {e.status, ErrorBody(e.code, e.message, e.detail)};
        } catch (const EncodingError& e) {
          reply = {422, ErrorBody(ErrorCodeName(e.code()), e.what(),
                                  {{"byte_offset", e.byte_offset()}})};
        } catch (const ReplayMismatchError& e) {
          reply = {StatusFor(e.code()),
                   ErrorBody(ErrorCodeName(e.code()), e.what(),
                             {{"seq", e.seq()}})};
        } catch (const Error& e) {
          reply = {StatusFor(e.code()), ErrorBody(ErrorCodeName(e.code()), e.what())};
        } catch (const Json::exception& e) {
          reply = {400, ErrorBody("invalid-json", e.what())};
        } catch (const std::exception& e) {
          reply = {500, ErrorBody("internal", e.what())};
        }
      }
      res.status = reply.status;
      res.set_content(reply.body.dump(), kJsonType);
    };
  };

  server.Post("/v1/models", wrap([&st](const httplib::Request& req) {
    std::string text;
    Json params;
    const bool plain = req.get_header_value("Content-Type").rfind("text/plain", 0) == 0;
    if (plain) {
      // Raw corpus upload; parameters come from the query string.
      for (const char* key : {"name", "kind", "orders", "min_frequency"}) {
        if (req.has_param(key)) params[key] = req.get_param_value(key);
      }
      if (params.contains("min_frequency")) {
        try {
          params["min_frequency"] = std::stoll(params["min_frequency"].get<std::string>());
        } catch (const std::exception&) {
          throw HttpError{400, "invalid-field", "min_frequency must be an integer"};
        }
      }
      text = req.body;
    } else {
      params = ParseBody(req);
      if (params.contains("corpus")) {
        text = Field<std::string>(params, "corpus");
      } else {
        text = Field<std::string>(params, "text");
      }
    }
    if (auto bad = FindInvalidUtf8(text)) throw EncodingError("", *bad);

    BuildOptions options;
    options.name = Field<std::string>(params, "name");
    options.kind = ParseModelKind(FieldOr<std::string>(params, "kind", "internal"));
    if (params.contains("orders")) options.orders = OrdersFrom(params["orders"]);
    options.min_frequency = FieldOr<std::int64_t>(params, "min_frequency", 2);
    ConsistencyModel model = ConsistencyModel::Build(text, options);
    Json summary = ModelSummary("", model);
    summary["id"] = st.StoreModel(std::move(model));
    return Reply{201, std::move(summary)};
  }));

  server.Get("/v1/models", wrap([&st](const httplib::Request&) {
    std::vector<std::string> ids;
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(st.ModelDir(), ec)) {
      if (entry.path().extension() == ".model") {
        ids.push_back(entry.path().stem().string());
      }
    }
    std::sort(ids.begin(), ids.end());
    Json models = Json::array();
    for (const std::string& id : ids) {
      if (auto model = st.FindModel(id)) models.push_back(ModelSummary(id, *model));
    }
    return Reply{200, Json{{"models", std::move(models)}}};
  }));

  server.Get(R"(/v1/models/([^/]+))", wrap([&st](const httplib::Request& req) {
    const std::string id = req.matches[1];
    auto model = st.RequireModel(id);
    if (req.has_param("context") || req.has_param("order")) {
      const std::string context = req.get_param_value("context");
      int order = kJudgeOrder;
      if (req.has_param("order")) {
        try {
          order = std::stoi(req.get_param_value("order"));
        } catch (const std::exception&) {
          throw HttpError{400, "invalid-order", "order must be an integer"};
        }
      }
      if (!model->orders().contains(order)) {
        throw HttpError{400, "invalid-order",
                        "order " + std::to_string(order) + " not in model"};
      }
      Json expected = Json::array();
      for (const ExpectedWord& ew : model->ExpectedWords(context, order)) {
        expected.push_back({{"word", ew.word}, {"frequency", ew.frequency}});
      }
      return Reply{200, Json{{"context", context},
                             {"order", order},
                             {"expected", std::move(expected)}}};
    }
    Json summary = ModelSummary(id, *model);
    if (model->size() <= st.config.entry_listing_cap) {
      Json entries = Json::array();
      for (const NGramEntry& e : model->entries()) {
        entries.push_back({{"order", e.order},
                           {"context", e.context},
                           {"expected_word", e.expected_word},
                           {"frequency", e.frequency}});
      }
      summary["entries"] = std::move(entries);
    } else {
      summary["entries_truncated"] = true;
    }
    return Reply{200, std::move(summary)};
  }));

  server.Post("/v1/score", wrap([&st](const httplib::Request& req) {
    const Json body = ParseBody(req);
    const std::string text = Field<std::string>(body, "text");
    auto model = st.RequireModel(Field<std::string>(body, "model_id"));
    const ScoreMode mode = ParseScoreMode(FieldOr<std::string>(body, "mode", "paper"));
    return Reply{200, ReportToJson(Score(text, *model, mode))};
  }));

  server.Post("/v1/sessions", wrap([&st](const httplib::Request& req) {
    const Json body = ParseBody(req);
    const std::string text = Field<std::string>(body, "text");
    const std::string model_id = Field<std::string>(body, "model_id");
    auto model = st.RequireModel(model_id);
    const ScoreMode mode = ParseScoreMode(FieldOr<std::string>(body, "mode", "paper"));
    auto slot = std::make_shared<State::SessionSlot>();
    slot->session.emplace(CleaningSession::Open(text, std::move(model), mode));
    slot->session->set_model_ref(model_id);
    std::lock_guard<std::mutex> slot_lock(slot->mu);
    {
      std::lock_guard<std::mutex> lock(st.sessions_mu);
      st.sessions.emplace(slot->session->id(), slot);
    }
    st.Persist(*slot->session);
    return Reply{201, st.SessionState(*slot->session)};
  }));

  server.Get(R"(/v1/sessions/([^/]+))", wrap([&st](const httplib::Request& req) {
    auto slot = st.RequireSession(req.matches[1]);
    std::lock_guard<std::mutex> lock(slot->mu);
    return Reply{200, st.SessionState(*slot->session)};
  }));

  auto check_seq = [](const Json& body, const CleaningSession& s, bool required) {
    if (!body.contains("expected_seq")) {
      if (required) {
        throw HttpError{400, "missing-field", "missing field 'expected_seq'"};
      }
      return;
    }
    const int expected = Field<int>(body, "expected_seq");
    if (expected != s.seq()) {
      throw HttpError{409, "conflict",
                      "session is at seq " + std::to_string(s.seq()) +
                          ", request expected " + std::to_string(expected),
                      {{"current_seq", s.seq()}, {"expected_seq", expected}}};
    }
  };

  auto edit_reply = [](const CleaningSession& s) {
    return Reply{200, Json{{"seq", s.seq()},
                           {"report", ReportToJson(s.latest())},
                           {"history_point", HistoryPointJson(s.score_history().back())}}};
  };

  server.Post(R"(/v1/sessions/([^/]+)/edits)",
              wrap([&st, check_seq, edit_reply](const httplib::Request& req) {
    const Json body = ParseBody(req);
    auto slot = st.RequireSession(req.matches[1]);
    std::lock_guard<std::mutex> lock(slot->mu);
    CleaningSession& s = *slot->session;
    check_seq(body, s, true);
    const auto position = Field<std::int64_t>(body, "position");
    if (position < 0) {
      throw HttpError{422, "out-of-range", "position must be non-negative"};
    }
    const EditSource source =
        ParseEditSource(FieldOr<std::string>(body, "source", "manual"));
    if (source == EditSource::kUndo) {
      throw HttpError{422, "invalid-edit", "use the undo endpoint"};
    }
    s.ApplyEdit(static_cast<std::size_t>(position),
                Field<std::string>(body, "new_word"), source);
    st.Persist(s);
    return edit_reply(s);
  }));

  server.Post(R"(/v1/sessions/([^/]+)/undo)",
              wrap([&st, check_seq, edit_reply](const httplib::Request& req) {
    const Json body = ParseBody(req);
    auto slot = st.RequireSession(req.matches[1]);
    std::lock_guard<std::mutex> lock(slot->mu);
    CleaningSession& s = *slot->session;
    check_seq(body, s, false);
    s.Undo();
    st.Persist(s);
    return edit_reply(s);
  }));

  server.Get(R"(/v1/sessions/([^/]+)/export)", wrap([&st](const httplib::Request& req) {
    auto slot = st.RequireSession(req.matches[1]);
    std::lock_guard<std::mutex> lock(slot->mu);
    return Reply{200, ExportSession(*slot->session)};
  }));
}

ServiceServer::ServiceServer(ServiceConfig config)
    : server_(std::make_unique<httplib::Server>()),
      service_(std::make_unique<Service>(std::move(config))) {
  server_->set_payload_max_length(service_->config().max_body_bytes);
  service_->Register(*server_);
}

ServiceServer::~ServiceServer() { Stop(); }

int ServiceServer::Bind(const std::string& host, int port) {
  if (port == 0) return server_->bind_to_any_port(host);
  return server_->bind_to_port(host, port) ? port : -1;
}

bool ServiceServer::Listen() { return server_->listen_after_bind(); }

void ServiceServer::Stop() {
  if (server_) server_->stop();
}

void ServiceServer::WaitUntilReady() { server_->wait_until_ready(); }

}  // namespace arianna
