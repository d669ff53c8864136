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

#ifndef ARIANNA_SCORER_H_
#define ARIANNA_SCORER_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "arianna/ngram_model.h"
#include "arianna/tokenizer.h"

namespace arianna {

// Only trigram contexts decide whether a word was forecast; longer orders
// contribute replacement candidates.
inline constexpr int kJudgeOrder = 3;

enum class ScoreMode {
  // Unknown contexts count as expected, as the published scores require.
  kPaper,
  // Same headline number, but unknown contexts are reported separately.
  kStrict,
};

std::string_view ScoreModeName(ScoreMode mode);  // "paper-compatible"/"strict"
// Accepts "paper", "paper-compatible" and "strict".
ScoreMode ParseScoreMode(std::string_view name);

struct Candidate {
  std::string word;
  int order = 0;
  std::string context;
  std::int64_t frequency = 0;
  int rank = 0;

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

struct Flag {
  std::size_t position = 0;
  std::string actual;
  std::string judge_context;
  std::vector<Candidate> candidates;

  friend bool operator==(const Flag&, const Flag&) = default;
};

struct ScoreReport {
  std::size_t word_count = 0;
  std::size_t as_expected = 0;
  std::size_t unexpected = 0;
  // Set in strict mode only. When set, as_expected excludes these.
  std::optional<std::size_t> unevaluable;
  std::vector<Flag> flags;
  std::string model_name;
  ScoreMode mode = ScoreMode::kPaper;

  // (word_count - unexpected) / word_count, identical in both modes.
  double consistency() const;

  friend bool operator==(const ScoreReport&, const ScoreReport&) = default;
};

// Throws Error(kEmptyText) when `text` has no tokens and
// Error(kMissingTrigrams) when the model was built without order 3.
ScoreReport Score(std::string_view text, const ConsistencyModel& model,
                  ScoreMode mode = ScoreMode::kPaper);
ScoreReport ScoreStrict(std::string_view text, const ConsistencyModel& model);

// Scores an already normalized word stream.
ScoreReport ScoreWords(std::span<const std::string> words,
                       const ConsistencyModel& model,
                       ScoreMode mode = ScoreMode::kPaper);

// `windows` are the n-gram windows ending at the flagged word (see
// WindowsEndingAt); their shared last word is the actual word. Candidates
// run from the highest order down, alphabetical inside each order group,
// never repeat the actual word, and are ranked from 1.
std::vector<Candidate> GenerateCandidates(std::span<const NGramWindow> windows,
                                          const ConsistencyModel& model);

}  // namespace arianna

#endif  // ARIANNA_SCORER_H_
