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

#include "arianna/ngram_model.h"

#include <algorithm>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>

#include "arianna/corpus_io.h"
#include "arianna/error.h"

namespace arianna {

std::string_view ModelKindName(ModelKind kind) {
  return kind == ModelKind::kInternal ? "internal" : "external";
}

ModelKind ParseModelKind(std::string_view name) {
  if (name == "internal") return ModelKind::kInternal;
  if (name == "external") return ModelKind::kExternal;
  throw Error(ErrorCode::kInvalidArgument,
              "model kind must be internal or external, got '" +
                  std::string(name) + "'");
}

bool CanonicalLess(const NGramEntry& a, const NGramEntry& b) {
  return std::forward_as_tuple(b.order, a.context, a.expected_word) <
         std::forward_as_tuple(a.order, b.context, b.expected_word);
}

bool IsValidModelName(std::string_view name) {
  if (name.empty() || name.size() > 128) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           (c >= '0' && c <= '9') || c == '.' || c == '_' || c == '-';
  });
}

namespace {

void CheckHeader(const std::string& name, const OrderSet& orders,
                 std::int64_t min_frequency) {
  if (!IsValidModelName(name)) {
    throw Error(ErrorCode::kInvalidArgument,
                "invalid model name '" + name + "'");
  }
  if (orders.empty()) {
    throw Error(ErrorCode::kInvalidOrder, "at least one order is required");
  }
  if (min_frequency < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "min_frequency must be >= 1, got " +
                    std::to_string(min_frequency));
  }
}

bool IsValidWord(std::string_view word) {
  if (word.empty()) return false;
  for (char c : word) {
    if (c == kContextJoiner || c == ' ' || c == '\t' || c == '\n' ||
        c == '\r') {
      return false;
    }
  }
  return true;
}

// Checks that `context` is `order - 1` valid words joined by underscores.
bool IsValidContext(std::string_view context, int order) {
  int words = 0;
  std::size_t pos = 0;
  while (true) {
    std::size_t next = context.find(kContextJoiner, pos);
    std::string_view word = context.substr(
        pos, next == std::string_view::npos ? std::string_view::npos
                                            : next - pos);
    if (!IsValidWord(word)) return false;
    ++words;
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return words == order - 1;
}

}  // namespace

ConsistencyModel ConsistencyModel::Build(std::string_view text,
                                         const BuildOptions& options) {
  CheckHeader(options.name, options.orders, options.min_frequency);

  const std::vector<std::string> words = TokenizeWords(text);

  ConsistencyModel model;
  model.kind_ = options.kind;
  model.name_ = options.name;
  model.orders_ = options.orders;
  model.min_frequency_ = options.min_frequency;
  model.meta_.source_checksum = options.source_checksum.empty()
                                    ? Sha256Hex(text)
                                    : options.source_checksum;
  model.meta_.token_count = static_cast<std::int64_t>(words.size());

  for (int order : options.orders.Descending()) {
    const auto n = static_cast<std::size_t>(order);
    if (words.size() < n) continue;
    // Full n-gram -> count. Words never contain the joiner, so the last
    // joiner splits context from expected word unambiguously.
    std::unordered_map<std::string, std::int64_t> counts;
    for (std::size_t start = 0; start + n <= words.size(); ++start) {
      ++counts[JoinWords(words, start, n)];
    }
    for (auto& [gram, count] : counts) {
      if (count < options.min_frequency) continue;
      const std::size_t split = gram.rfind(kContextJoiner);
      model.entries_.push_back(
          {order, gram.substr(0, split), gram.substr(split + 1), count});
    }
  }
  std::sort(model.entries_.begin(), model.entries_.end(), CanonicalLess);
  model.Reindex();
  return model;
}

ConsistencyModel ConsistencyModel::FromEntries(ModelKind kind,
                                               std::string name,
                                               OrderSet orders,
                                               std::int64_t min_frequency,
                                               ModelMeta meta,
                                               std::vector<NGramEntry> entries) {
  CheckHeader(name, orders, min_frequency);
  for (const NGramEntry& e : entries) {
    if (!orders.contains(e.order)) {
      throw Error(ErrorCode::kInvalidOrder,
                  "entry order " + std::to_string(e.order) +
                      " not in model orders " + orders.ToString());
    }
    if (!IsValidContext(e.context, e.order) || !IsValidWord(e.expected_word)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "malformed entry '" + e.context + "' -> '" +
                      e.expected_word + "'");
    }
    if (e.frequency < min_frequency) {
      throw Error(ErrorCode::kInvalidArgument,
                  "entry frequency " + std::to_string(e.frequency) +
                      " below min_frequency " + std::to_string(min_frequency));
    }
  }
  std::sort(entries.begin(), entries.end(), CanonicalLess);
  for (std::size_t i = 1; i < entries.size(); ++i) {
    const NGramEntry& a = entries[i - 1];
    const NGramEntry& b = entries[i];
    if (a.order == b.order && a.context == b.context &&
        a.expected_word == b.expected_word) {
      throw Error(ErrorCode::kInvalidArgument,
                  "duplicate entry '" + b.context + "' -> '" +
                      b.expected_word + "'");
    }
  }

  ConsistencyModel model;
  model.kind_ = kind;
  model.name_ = std::move(name);
  model.orders_ = orders;
  model.min_frequency_ = min_frequency;
  model.meta_ = std::move(meta);
  model.entries_ = std::move(entries);
  model.Reindex();
  return model;
}

void ConsistencyModel::Reindex() {
  for (auto& idx : index_) idx.clear();
  // entries_ is canonical, so each bucket fills in word order.
  for (const NGramEntry& e : entries_) {
    index_[static_cast<std::size_t>(e.order - kMinOrder)][e.context]
        .push_back({e.expected_word, e.frequency});
  }
}

std::span<const ExpectedWord> ConsistencyModel::ExpectedWords(
    std::string_view context, int order) const {
  if (!orders_.contains(order)) return {};
  const ContextIndex& idx = index_[static_cast<std::size_t>(order - kMinOrder)];
  auto it = idx.find(context);
  if (it == idx.end()) return {};
  return it->second;
}

std::map<int, std::size_t> ConsistencyModel::EntryCounts() const {
  std::map<int, std::size_t> counts;
  for (int order : orders_.Ascending()) counts[order] = 0;
  for (const NGramEntry& e : entries_) ++counts[e.order];
  return counts;
}

}  // namespace arianna
