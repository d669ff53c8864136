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

#ifndef ARIANNA_NGRAM_MODEL_H_
#define ARIANNA_NGRAM_MODEL_H_

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "arianna/tokenizer.h"

namespace arianna {

enum class ModelKind { kInternal, kExternal };

std::string_view ModelKindName(ModelKind kind);
// Throws Error(kInvalidArgument) for anything but "internal"/"external".
ModelKind ParseModelKind(std::string_view name);

// One context -> expected-word record of a consistency dataset.
struct NGramEntry {
  int order = 0;
  std::string context;
  std::string expected_word;
  std::int64_t frequency = 0;

  friend bool operator==(const NGramEntry&, const NGramEntry&) = default;
};

// Canonical record order: order descending, context ascending, expected
// word ascending (bytewise).
bool CanonicalLess(const NGramEntry& a, const NGramEntry& b);

struct ExpectedWord {
  std::string word;
  std::int64_t frequency = 0;

  friend bool operator==(const ExpectedWord&, const ExpectedWord&) = default;
};

struct ModelMeta {
  // Lowercase hex SHA-256 of the training bytes.
  std::string source_checksum;
  std::int64_t token_count = 0;
  std::string format_version = "v1";

  friend bool operator==(const ModelMeta&, const ModelMeta&) = default;
};

struct BuildOptions {
  OrderSet orders = OrderSet::All();
  std::int64_t min_frequency = 2;
  ModelKind kind = ModelKind::kInternal;
  std::string name = "model";
  // Overrides the checksum computed from the text, e.g. when the text came
  // from a multi-file corpus whose checksum is already known.
  std::string source_checksum;
};

// Model names appear unquoted in the model file header, so they are
// restricted to [A-Za-z0-9._-]+.
bool IsValidModelName(std::string_view name);

// The trained forecaster: an immutable, indexed set of n-gram entries.
class ConsistencyModel {
 public:
  // Tokenizes `text`, counts every full n-gram of the requested orders and
  // keeps the ones seen at least `min_frequency` times.
  static ConsistencyModel Build(std::string_view text,
                                const BuildOptions& options);

  // Assembles a model from already-counted records (model files, fixtures).
  // Validates every record against the header fields.
  static ConsistencyModel FromEntries(ModelKind kind, std::string name,
                                      OrderSet orders,
                                      std::int64_t min_frequency,
                                      ModelMeta meta,
                                      std::vector<NGramEntry> entries);

  ModelKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  const OrderSet& orders() const { return orders_; }
  std::int64_t min_frequency() const { return min_frequency_; }
  const ModelMeta& meta() const { return meta_; }

  // Entries in canonical order.
  const std::vector<NGramEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  // Expected words for (context, order), sorted by word. Empty when the
  // context is unknown at that order.
  std::span<const ExpectedWord> ExpectedWords(std::string_view context,
                                              int order) const;

  // Entry count for every order in orders(), including zero counts.
  std::map<int, std::size_t> EntryCounts() const;

  friend bool operator==(const ConsistencyModel& a,
                         const ConsistencyModel& b) {
    return a.kind_ == b.kind_ && a.name_ == b.name_ &&
           a.orders_ == b.orders_ && a.min_frequency_ == b.min_frequency_ &&
           a.meta_ == b.meta_ && a.entries_ == b.entries_;
  }

 private:
  struct StringHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const {
      return std::hash<std::string_view>{}(s);
    }
  };
  using ContextIndex =
      std::unordered_map<std::string, std::vector<ExpectedWord>, StringHash,
                         std::equal_to<>>;

  ConsistencyModel() = default;
  void Reindex();

  ModelKind kind_ = ModelKind::kInternal;
  std::string name_;
  OrderSet orders_;
  std::int64_t min_frequency_ = 2;
  ModelMeta meta_;
  std::vector<NGramEntry> entries_;
  // Indexed by order - kMinOrder.
  std::array<ContextIndex, kMaxOrder - kMinOrder + 1> index_;
};

}  // namespace arianna

#endif  // ARIANNA_NGRAM_MODEL_H_
