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

#include "arianna/session.h"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <mutex>
#include <random>
#include <utility>

#include "arianna/error.h"

namespace arianna {
namespace {

std::string NowUtc() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      now.time_since_epoch())
                      .count() %
                  1000;
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ",
                tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday, tm.tm_hour,
                tm.tm_min, tm.tm_sec, static_cast<int>(ms));
  return buf;
}

// The single token `word` normalizes to.
std::string NormalizeReplacement(std::string_view word) {
  std::vector<Token> tokens = Tokenize(word);
  if (tokens.size() != 1) {
    throw Error(ErrorCode::kInvalidEdit,
                "replacement '" + std::string(word) + "' normalizes to " +
                    std::to_string(tokens.size()) + " tokens, expected 1");
  }
  return std::move(tokens.front().text);
}

}  // namespace

std::string_view EditSourceName(EditSource source) {
  switch (source) {
    case EditSource::kAcceptedCandidate:
      return "accepted-candidate";
    case EditSource::kManual:
      return "manual";
    case EditSource::kUndo:
      return "undo";
  }
  return "manual";
}

EditSource ParseEditSource(std::string_view name) {
  if (name == "accepted-candidate") return EditSource::kAcceptedCandidate;
  if (name == "manual") return EditSource::kManual;
  if (name == "undo") return EditSource::kUndo;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown edit source '" + std::string(name) + "'");
}

std::string NewSessionId() {
  static std::atomic<unsigned long long> counter{0};
  static const unsigned long long salt = [] {
    std::random_device rd;
    return (static_cast<unsigned long long>(rd()) << 32) ^ rd();
  }();
  char buf[48];
  std::snprintf(buf, sizeof(buf), "s-%016llx-%llu", salt,
                counter.fetch_add(1) + 1);
  return buf;
}

CleaningSession CleaningSession::Open(
    std::string original_text, std::shared_ptr<const ConsistencyModel> model,
    ScoreMode mode) {
  if (!model) throw Error(ErrorCode::kInvalidArgument, "session needs a model");
  CleaningSession s;
  s.tokens_ = Tokenize(original_text);
  s.history_.push_back(
      {0, ScoreWords(Words(s.tokens_), *model, mode)});
  s.id_ = NewSessionId();
  s.original_text_ = std::move(original_text);
  s.model_ref_ = model->name();
  s.model_ = std::move(model);
  s.mode_ = mode;
  return s;
}

std::string CleaningSession::CurrentText() const {
  std::string out;
  for (const Token& t : tokens_) {
    if (!out.empty()) out.push_back(' ');
    out += t.text;
  }
  return out;
}

const ScoreReport& CleaningSession::Append(Edit edit) {
  // Score first so a failure leaves the session untouched.
  std::vector<std::string> words = Words(tokens_);
  words[edit.position] = edit.new_word;
  ScoreReport report = ScoreWords(words, *model_, mode_);

  tokens_[edit.position].text = edit.new_word;
  if (edit.source == EditSource::kUndo) {
    undo_stack_.pop_back();
  } else {
    undo_stack_.push_back(edit.seq);
  }
  edit_log_.push_back(std::move(edit));
  history_.push_back({seq(), std::move(report)});
  return history_.back().report;
}

const ScoreReport& CleaningSession::ApplyEdit(std::size_t position,
                                              std::string_view new_word,
                                              EditSource source) {
  if (position >= tokens_.size()) {
    throw Error(ErrorCode::kOutOfRange,
                "position " + std::to_string(position) + " out of range (" +
                    std::to_string(tokens_.size()) + " words)");
  }
  if (source == EditSource::kUndo) {
    throw Error(ErrorCode::kInvalidEdit, "use Undo() for compensating edits");
  }
  Edit edit;
  edit.seq = seq() + 1;
  edit.position = position;
  edit.old_word = tokens_[position].text;
  edit.new_word = NormalizeReplacement(new_word);
  edit.source = source;
  edit.applied_at = NowUtc();
  return Append(std::move(edit));
}

const ScoreReport& CleaningSession::Undo() {
  if (undo_stack_.empty()) {
    throw Error(ErrorCode::kNothingToUndo, "nothing to undo");
  }
  const Edit& target = edit_log_[static_cast<std::size_t>(undo_stack_.back() - 1)];
  Edit edit;
  edit.seq = seq() + 1;
  edit.position = target.position;
  edit.old_word = tokens_[target.position].text;
  edit.new_word = target.old_word;
  edit.source = EditSource::kUndo;
  edit.applied_at = NowUtc();
  edit.reverts = target.seq;
  return Append(std::move(edit));
}

Json ExportSession(const CleaningSession& session) {
  Json doc;
  doc["format"] = kSessionFormat;
  doc["id"] = session.id();
  doc["model"] = {{"name", session.model().name()},
                  {"ref", session.model_ref()},
                  {"checksum", session.model().meta().source_checksum}};
  doc["mode"] = ScoreModeName(session.mode());
  doc["original_text"] = session.original_text();
  Json edits = Json::array();
  for (const Edit& e : session.edit_log()) {
    Json edit = {{"seq", e.seq},
                 {"position", e.position},
                 {"old_word", e.old_word},
                 {"new_word", e.new_word},
                 {"source", EditSourceName(e.source)},
                 {"applied_at", e.applied_at}};
    if (e.reverts) edit["reverts"] = *e.reverts;
    edits.push_back(std::move(edit));
  }
  doc["edits"] = std::move(edits);
  Json history = Json::array();
  for (const HistoryPoint& h : session.score_history()) {
    history.push_back({{"seq", h.seq}, {"report", ReportToJson(h.report)}});
  }
  doc["score_history"] = std::move(history);
  return doc;
}

CleaningSession ImportSession(const Json& doc,
                              std::shared_ptr<const ConsistencyModel> model) {
  if (!model) throw Error(ErrorCode::kInvalidArgument, "session needs a model");
  try {
    if (doc.at("format").get<std::string>() != kSessionFormat) {
      throw Error(ErrorCode::kVersionMismatch,
                  "unsupported session format '" +
                      doc.at("format").get<std::string>() + "'");
    }
    const Json& edits = doc.at("edits");
    const Json& history = doc.at("score_history");
    if (!edits.is_array() || !history.is_array() ||
        history.size() != edits.size() + 1) {
      throw MalformedError(0, "score_history must have one point per edit plus "
                              "the initial score");
    }
    auto check_point = [&](CleaningSession& s, std::size_t k) {
      const Json& point = history[k];
      if (point.at("seq").get<int>() != static_cast<int>(k)) {
        throw MalformedError(0, "score_history seq out of sequence at index " +
                                    std::to_string(k));
      }
      const Json& recorded = point.at("report");
      const ScoreReport& replayed = s.history_[k].report;
      if (ReportFromJson(recorded) != replayed ||
          recorded.at("consistency").get<double>() != replayed.consistency()) {
        throw ReplayMismatchError(static_cast<int>(k),
                                  "recorded report differs from replay");
      }
    };

    CleaningSession s = CleaningSession::Open(
        doc.at("original_text").get<std::string>(), std::move(model),
        ParseScoreMode(doc.at("mode").get<std::string>()));
    s.id_ = doc.at("id").get<std::string>();
    if (doc.contains("model") && doc["model"].contains("ref")) {
      s.model_ref_ = doc["model"]["ref"].get<std::string>();
    }
    check_point(s, 0);

    for (std::size_t k = 0; k < edits.size(); ++k) {
      const Json& e = edits[k];
      const int seq = static_cast<int>(k + 1);
      if (e.at("seq").get<int>() != seq) {
        throw MalformedError(0, "edit seq out of sequence at index " +
                                    std::to_string(k));
      }
      Edit edit;
      edit.seq = seq;
      edit.position = e.at("position").get<std::size_t>();
      edit.old_word = e.at("old_word").get<std::string>();
      edit.new_word = e.at("new_word").get<std::string>();
      edit.source = ParseEditSource(e.at("source").get<std::string>());
      edit.applied_at = e.at("applied_at").get<std::string>();
      if (e.contains("reverts")) edit.reverts = e["reverts"].get<int>();

      if (edit.position >= s.tokens_.size() ||
          s.tokens_[edit.position].text != edit.old_word) {
        throw ReplayMismatchError(seq, "old_word does not match replayed text");
      }
      if (NormalizeReplacement(edit.new_word) != edit.new_word) {
        throw MalformedError(0, "edit " + std::to_string(seq) +
                                    " new_word is not normalized");
      }
      if (edit.source == EditSource::kUndo) {
        if (s.undo_stack_.empty() || !edit.reverts ||
            *edit.reverts != s.undo_stack_.back()) {
          throw ReplayMismatchError(seq, "undo does not revert the latest edit");
        }
        const Edit& target =
            s.edit_log_[static_cast<std::size_t>(*edit.reverts - 1)];
        if (target.position != edit.position ||
            target.old_word != edit.new_word) {
          throw ReplayMismatchError(seq, "undo is not the inverse edit");
        }
      } else if (edit.reverts) {
        throw MalformedError(0, "only undo edits carry 'reverts'");
      }
      s.Append(std::move(edit));
      check_point(s, k + 1);
    }
    return s;
  } catch (const Json::exception& e) {
    throw MalformedError(0, std::string("bad session document: ") + e.what());
  }
}

}  // namespace arianna
