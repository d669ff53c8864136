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

#include "arianna/scorer.h"

#include <algorithm>
#include <string>
#include <tuple>

#include "arianna/error.h"

namespace arianna {

std::string_view ScoreModeName(ScoreMode mode) {
  return mode == ScoreMode::kPaper ? "paper-compatible" : "strict";
}

ScoreMode ParseScoreMode(std::string_view name) {
  if (name == "paper" || name == "paper-compatible") return ScoreMode::kPaper;
  if (name == "strict") return ScoreMode::kStrict;
  throw Error(ErrorCode::kInvalidArgument,
              "mode must be paper or strict, got '" + std::string(name) + "'");
}

double ScoreReport::consistency() const {
  if (word_count == 0) return 1.0;
  return static_cast<double>(word_count - unexpected) /
         static_cast<double>(word_count);
}

std::vector<Candidate> GenerateCandidates(std::span<const NGramWindow> windows,
                                          const ConsistencyModel& model) {
  std::vector<Candidate> out;
  for (const NGramWindow& w : windows) {
    for (const ExpectedWord& ew : model.ExpectedWords(w.context, w.order)) {
      if (ew.word == w.last_word) continue;
      out.push_back({ew.word, w.order, w.context, ew.frequency, 0});
    }
  }
  std::sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
    return std::forward_as_tuple(b.order, a.word, a.context) <
           std::forward_as_tuple(a.order, b.word, b.context);
  });
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i].rank = static_cast<int>(i + 1);
  }
  return out;
}

ScoreReport ScoreWords(std::span<const std::string> words,
                       const ConsistencyModel& model, ScoreMode mode) {
  if (words.empty()) {
    throw Error(ErrorCode::kEmptyText, "text to evaluate has no words");
  }
  if (!model.orders().contains(kJudgeOrder)) {
    throw Error(ErrorCode::kMissingTrigrams,
                "model '" + model.name() + "' was built without order 3");
  }

  ScoreReport report;
  report.word_count = words.size();
  report.model_name = model.name();
  report.mode = mode;

  std::size_t unevaluable = std::min<std::size_t>(words.size(), 2);
  for (std::size_t p = 2; p < words.size(); ++p) {
    const std::string context = JoinWords(words, p - 2, 2);
    std::span<const ExpectedWord> expected =
        model.ExpectedWords(context, kJudgeOrder);
    if (expected.empty()) {
      ++unevaluable;
      continue;
    }
    const bool hit = std::ranges::binary_search(expected, words[p], {},
                                                &ExpectedWord::word);
    if (hit) continue;
    Flag flag;
    flag.position = p;
    flag.actual = words[p];
    flag.judge_context = context;
    const std::vector<NGramWindow> windows =
        WindowsEndingAt(words, p, model.orders());
    flag.candidates = GenerateCandidates(windows, model);
    report.flags.push_back(std::move(flag));
  }

  report.unexpected = report.flags.size();
  report.as_expected = report.word_count - report.unexpected;
  if (mode == ScoreMode::kStrict) {
    report.unevaluable = unevaluable;
    report.as_expected -= unevaluable;
  }
  return report;
}

ScoreReport Score(std::string_view text, const ConsistencyModel& model,
                  ScoreMode mode) {
  const std::vector<std::string> words = TokenizeWords(text);
  return ScoreWords(words, model, mode);
}

ScoreReport ScoreStrict(std::string_view text, const ConsistencyModel& model) {
  return Score(text, model, ScoreMode::kStrict);
}

}  // namespace arianna
