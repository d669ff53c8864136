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

#ifndef ARIANNA_SESSION_H_
#define ARIANNA_SESSION_H_

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "arianna/ngram_model.h"
#include "arianna/report_json.h"
#include "arianna/scorer.h"
#include "arianna/tokenizer.h"

namespace arianna {

inline constexpr std::string_view kSessionFormat = "arianna-session v1";

enum class EditSource { kAcceptedCandidate, kManual, kUndo };

std::string_view EditSourceName(EditSource source);
EditSource ParseEditSource(std::string_view name);

struct Edit {
  int seq = 0;  // 1-based
  std::size_t position = 0;
  std::string old_word;
  std::string new_word;
  EditSource source = EditSource::kManual;
  std::string applied_at;  // ISO-8601 UTC
  // For undo edits: the seq of the edit being reverted.
  std::optional<int> reverts;

  friend bool operator==(const Edit&, const Edit&) = default;
};

struct HistoryPoint {
  int seq = 0;
  ScoreReport report;

  friend bool operator==(const HistoryPoint&, const HistoryPoint&) = default;
};

// A text under cleaning plus its append-only edit ledger. score_history()[k]
// is always the score of the text after the first k edits.
class CleaningSession {
 public:
  // Throws whatever Score throws for `original_text`.
  static CleaningSession Open(std::string original_text,
                              std::shared_ptr<const ConsistencyModel> model,
                              ScoreMode mode = ScoreMode::kPaper);

  // Replaces the word at `position`. `new_word` must normalize to exactly
  // one token. Throws Error(kOutOfRange) or Error(kInvalidEdit).
  const ScoreReport& ApplyEdit(std::size_t position, std::string_view new_word,
                               EditSource source = EditSource::kManual);

  // Appends the inverse of the latest edit that has not been undone yet.
  // Throws Error(kNothingToUndo).
  const ScoreReport& Undo();
  bool CanUndo() const { return !undo_stack_.empty(); }

  const std::string& id() const { return id_; }
  const std::string& original_text() const { return original_text_; }
  const std::vector<Token>& current_tokens() const { return tokens_; }
  std::vector<std::string> current_words() const { return Words(tokens_); }
  // Current words joined by single spaces.
  std::string CurrentText() const;

  const std::vector<Edit>& edit_log() const { return edit_log_; }
  const std::vector<HistoryPoint>& score_history() const { return history_; }
  const ScoreReport& latest() const { return history_.back().report; }
  int seq() const { return static_cast<int>(edit_log_.size()); }

  const ConsistencyModel& model() const { return *model_; }
  const std::shared_ptr<const ConsistencyModel>& shared_model() const {
    return model_;
  }
  ScoreMode mode() const { return mode_; }

  // Caller-defined handle for the model (the service stores its model id
  // here). Defaults to the model name.
  const std::string& model_ref() const { return model_ref_; }
  void set_model_ref(std::string ref) { model_ref_ = std::move(ref); }

 private:
  CleaningSession() = default;
  const ScoreReport& Append(Edit edit);

  std::string id_;
  std::string original_text_;
  std::vector<Token> tokens_;
  std::shared_ptr<const ConsistencyModel> model_;
  std::string model_ref_;
  ScoreMode mode_ = ScoreMode::kPaper;
  std::vector<Edit> edit_log_;
  std::vector<HistoryPoint> history_;
  std::vector<int> undo_stack_;

  friend CleaningSession ImportSession(const Json& doc,
                                       std::shared_ptr<const ConsistencyModel>);
};

Json ExportSession(const CleaningSession& session);

// Replays the document against `model`, checking every recorded score.
// Throws ReplayMismatchError naming the first diverging seq, or
// MalformedError for structural problems.
CleaningSession ImportSession(const Json& doc,
                              std::shared_ptr<const ConsistencyModel> model);

// Fresh process-unique identifier.
std::string NewSessionId();

}  // namespace arianna

#endif  // ARIANNA_SESSION_H_
