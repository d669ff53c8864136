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

#include "arianna/model_io.h"

#include <charconv>
#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include "arianna/corpus_io.h"
#include "arianna/error.h"

namespace arianna {
namespace {

std::vector<std::string_view> Split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (true) {
    std::size_t next = s.find(sep, pos);
    if (next == std::string_view::npos) {
      parts.push_back(s.substr(pos));
      return parts;
    }
    parts.push_back(s.substr(pos, next - pos));
    pos = next + 1;
  }
}

bool ParseInt(std::string_view s, std::int64_t* out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), *out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

bool IsHex(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'))) return false;
  }
  return true;
}

}  // namespace

std::string SerializeModel(const ConsistencyModel& model) {
  std::string out;
  out.reserve(96 + model.size() * 32);
  out += kModelMagic;
  out += ' ';
  out += kModelVersion;
  out += '\n';
  out += "#meta kind=";
  out += ModelKindName(model.kind());
  out += " name=" + model.name();
  out += " orders=" + model.orders().ToString();
  out += " min_frequency=" + std::to_string(model.min_frequency());
  out += " tokens=" + std::to_string(model.meta().token_count);
  out += " checksum=" + model.meta().source_checksum;
  out += '\n';
  for (const NGramEntry& e : model.entries()) {
    out += std::to_string(e.order);
    out += '\t';
    out += e.context;
    out += '\t';
    out += e.expected_word;
    out += '\t';
    out += std::to_string(e.frequency);
    out += '\n';
  }
  return out;
}

LoadedModel ParseModel(std::string_view document,
                       std::string_view expected_checksum) {
  if (auto bad = FindInvalidUtf8(document)) throw EncodingError("", *bad);
  if (document.empty() || document.back() != '\n') {
    throw MalformedError(document.empty() ? 1 : Split(document, '\n').size(),
                         "missing trailing newline");
  }
  std::vector<std::string_view> lines =
      Split(document.substr(0, document.size() - 1), '\n');
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (!lines[i].empty() && lines[i].back() == '\r') {
      throw MalformedError(i + 1, "CR line endings are not allowed");
    }
  }

  // Line 1: magic and version.
  {
    std::vector<std::string_view> head = Split(lines[0], ' ');
    if (head.size() != 2 || head[0] != kModelMagic) {
      throw MalformedError(1, "not an arianna-model file");
    }
    if (head[1] != kModelVersion) {
      throw Error(ErrorCode::kVersionMismatch,
                  "unsupported model format version '" + std::string(head[1]) +
                      "' (expected " + std::string(kModelVersion) + ")");
    }
  }

  // Line 2: metadata, keys in fixed order.
  if (lines.size() < 2) throw MalformedError(2, "missing #meta line");
  static constexpr std::string_view kKeys[] = {
      "kind", "name", "orders", "min_frequency", "tokens", "checksum"};
  std::map<std::string_view, std::string_view> meta;
  {
    std::vector<std::string_view> fields = Split(lines[1], ' ');
    if (fields.size() != 1 + std::size(kKeys) || fields[0] != "#meta") {
      throw MalformedError(2, "malformed #meta line");
    }
    for (std::size_t i = 0; i < std::size(kKeys); ++i) {
      std::string_view f = fields[i + 1];
      std::size_t eq = f.find('=');
      if (eq == std::string_view::npos || f.substr(0, eq) != kKeys[i]) {
        throw MalformedError(2, "expected key '" + std::string(kKeys[i]) + "'");
      }
      meta[kKeys[i]] = f.substr(eq + 1);
    }
  }

  ModelKind kind;
  OrderSet orders;
  std::int64_t min_frequency = 0;
  ModelMeta model_meta;
  try {
    kind = ParseModelKind(meta["kind"]);
    orders = OrderSet::Parse(meta["orders"]);
  } catch (const Error& e) {
    throw MalformedError(2, e.what());
  }
  if (!ParseInt(meta["min_frequency"], &min_frequency)) {
    throw MalformedError(2, "bad min_frequency");
  }
  if (!ParseInt(meta["tokens"], &model_meta.token_count) ||
      model_meta.token_count < 0) {
    throw MalformedError(2, "bad tokens");
  }
  if (!IsHex(meta["checksum"])) throw MalformedError(2, "bad checksum");
  model_meta.source_checksum = std::string(meta["checksum"]);

  std::vector<NGramEntry> entries;
  entries.reserve(lines.size() - 2);
  for (std::size_t i = 2; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    std::vector<std::string_view> cols = Split(lines[i], '\t');
    if (cols.size() != 4) throw MalformedError(line_no, "expected 4 columns");
    NGramEntry e;
    std::int64_t order = 0;
    if (!ParseInt(cols[0], &order) || !orders.contains(static_cast<int>(order))) {
      throw MalformedError(line_no, "bad order '" + std::string(cols[0]) + "'");
    }
    e.order = static_cast<int>(order);
    std::vector<std::string_view> context_words = Split(cols[1], kContextJoiner);
    bool words_ok = context_words.size() == static_cast<std::size_t>(order - 1);
    for (std::string_view w : context_words) words_ok = words_ok && !w.empty();
    if (!words_ok || cols[2].empty() ||
        cols[2].find(kContextJoiner) != std::string_view::npos) {
      throw MalformedError(line_no, "context/word does not match order " +
                                        std::to_string(order));
    }
    e.context = std::string(cols[1]);
    e.expected_word = std::string(cols[2]);
    if (!ParseInt(cols[3], &e.frequency) || e.frequency < min_frequency) {
      throw MalformedError(line_no,
                           "bad frequency '" + std::string(cols[3]) + "'");
    }
    if (!entries.empty() && !CanonicalLess(entries.back(), e)) {
      throw MalformedError(line_no, "records out of order or duplicated");
    }
    entries.push_back(std::move(e));
  }

  LoadedModel loaded{
      [&] {
        try {
          return ConsistencyModel::FromEntries(
              kind, std::string(meta["name"]), orders, min_frequency,
              std::move(model_meta), std::move(entries));
        } catch (const Error& e) {
          throw MalformedError(0, e.what());
        }
      }(),
      {}};
  if (!expected_checksum.empty() &&
      expected_checksum != loaded.model.meta().source_checksum) {
    loaded.warnings.push_back(
        "checksum mismatch: model records " +
        loaded.model.meta().source_checksum + ", expected " +
        std::string(expected_checksum));
  }
  return loaded;
}

void SaveModel(const ConsistencyModel& model,
               const std::filesystem::path& destination) {
  WriteFileBytes(destination, SerializeModel(model));
}

LoadedModel LoadModel(const std::filesystem::path& source,
                      std::string_view expected_checksum) {
  std::string bytes = ReadFileBytes(source);
  return ParseModel(bytes, expected_checksum);
}

}  // namespace arianna
