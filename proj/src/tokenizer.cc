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

#include "arianna/tokenizer.h"

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include <bit>
#include <string>
#include <vector>

#include "arianna/error.h"

namespace arianna {
namespace {

void CheckOrder(int order) {
  if (order < kMinOrder || order > kMaxOrder) {
    throw Error(ErrorCode::kInvalidOrder,
                "invalid n-gram order " + std::to_string(order) +
                    " (supported: 3, 4, 5)");
  }
}

// One decoded code point. `value` is negative for an ill-formed sequence.
struct CodePoint {
  UChar32 value;
  std::size_t begin;
  std::size_t end;
};

std::vector<CodePoint> Decode(std::string_view text) {
  std::vector<CodePoint> out;
  out.reserve(text.size());
  const auto* bytes = reinterpret_cast<const uint8_t*>(text.data());
  const auto length = static_cast<int32_t>(text.size());
  int32_t i = 0;
  while (i < length) {
    const int32_t begin = i;
    UChar32 c;
    U8_NEXT(bytes, i, length, c);
    out.push_back({c, static_cast<std::size_t>(begin),
                   static_cast<std::size_t>(i)});
  }
  return out;
}

bool IsSpace(UChar32 c) { return c >= 0 && u_isUWhiteSpace(c); }

bool IsEdgeStripped(UChar32 c) {
  if (c < 0) return false;
  return (U_GET_GC_MASK(c) & (U_GC_P_MASK | U_GC_S_MASK)) != 0;
}

void AppendFolded(const CodePoint& cp, std::string_view raw, std::string* out) {
  if (cp.value < 0) {
    out->append(raw.substr(cp.begin, cp.end - cp.begin));
    return;
  }
  UChar32 c = cp.value == kContextJoiner ? UChar32{'-'} : u_tolower(cp.value);
  char buf[U8_MAX_LENGTH];
  int32_t n = 0;
  U8_APPEND_UNSAFE(reinterpret_cast<uint8_t*>(buf), n, c);
  out->append(buf, static_cast<std::size_t>(n));
}

}  // namespace

OrderSet::OrderSet(std::initializer_list<int> orders) {
  for (int order : orders) insert(order);
}

OrderSet OrderSet::FromVector(std::span<const int> orders) {
  OrderSet set;
  for (int order : orders) set.insert(order);
  return set;
}

OrderSet OrderSet::Parse(std::string_view text) {
  OrderSet set;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view item = text.substr(pos, comma - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (item.size() != 1 || item[0] < '0' || item[0] > '9') {
      throw Error(ErrorCode::kInvalidOrder,
                  "invalid order list '" + std::string(text) + "'");
    }
    set.insert(item[0] - '0');
    pos = comma + 1;
  }
  return set;
}

bool OrderSet::contains(int order) const {
  if (order < kMinOrder || order > kMaxOrder) return false;
  return (bits_ >> (order - kMinOrder)) & 1u;
}

std::size_t OrderSet::size() const {
  return static_cast<std::size_t>(std::popcount(bits_));
}

void OrderSet::insert(int order) {
  CheckOrder(order);
  bits_ |= static_cast<std::uint8_t>(1u << (order - kMinOrder));
}

std::vector<int> OrderSet::Ascending() const {
  std::vector<int> out;
  for (int n = kMinOrder; n <= kMaxOrder; ++n) {
    if (contains(n)) out.push_back(n);
  }
  return out;
}

std::vector<int> OrderSet::Descending() const {
  std::vector<int> out;
  for (int n = kMaxOrder; n >= kMinOrder; --n) {
    if (contains(n)) out.push_back(n);
  }
  return out;
}

std::string OrderSet::ToString() const {
  std::string out;
  for (int n : Ascending()) {
    if (!out.empty()) out.push_back(',');
    out += std::to_string(n);
  }
  return out;
}

int OrderSet::Smallest() const {
  for (int n = kMinOrder; n <= kMaxOrder; ++n) {
    if (contains(n)) return n;
  }
  return 0;
}

std::vector<Token> Tokenize(std::string_view text) {
  const std::vector<CodePoint> cps = Decode(text);
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < cps.size()) {
    if (IsSpace(cps[i].value)) {
      ++i;
      continue;
    }
    std::size_t chunk_end = i;
    while (chunk_end < cps.size() && !IsSpace(cps[chunk_end].value)) {
      ++chunk_end;
    }
    std::size_t first = i;
    std::size_t last = chunk_end;
    while (first < last && IsEdgeStripped(cps[first].value)) ++first;
    while (last > first && IsEdgeStripped(cps[last - 1].value)) --last;
    if (first < last) {
      Token token;
      token.index = tokens.size();
      token.span = {cps[first].begin, cps[last - 1].end};
      for (std::size_t k = first; k < last; ++k) {
        AppendFolded(cps[k], text, &token.text);
      }
      tokens.push_back(std::move(token));
    }
    i = chunk_end;
  }
  return tokens;
}

std::vector<std::string> Words(std::span<const Token> tokens) {
  std::vector<std::string> words;
  words.reserve(tokens.size());
  for (const Token& t : tokens) words.push_back(t.text);
  return words;
}

std::vector<std::string> TokenizeWords(std::string_view text) {
  return Words(Tokenize(text));
}

std::string JoinWords(std::span<const std::string> words, std::size_t begin,
                      std::size_t count) {
  std::string out;
  for (std::size_t k = 0; k < count; ++k) {
    if (k > 0) out.push_back(kContextJoiner);
    out += words[begin + k];
  }
  return out;
}

std::vector<NGramWindow> ExtractNGrams(std::span<const std::string> words,
                                       const OrderSet& orders) {
  std::vector<NGramWindow> windows;
  for (int order : orders.Descending()) {
    const auto n = static_cast<std::size_t>(order);
    if (words.size() < n) continue;
    for (std::size_t start = 0; start + n <= words.size(); ++start) {
      windows.push_back({order, JoinWords(words, start, n - 1),
                         words[start + n - 1], start});
    }
  }
  return windows;
}

std::vector<NGramWindow> ExtractNGrams(std::span<const Token> tokens,
                                       const OrderSet& orders) {
  const std::vector<std::string> words = Words(tokens);
  return ExtractNGrams(std::span<const std::string>(words), orders);
}

std::vector<NGramWindow> WindowsEndingAt(std::span<const std::string> words,
                                         std::size_t position,
                                         const OrderSet& orders) {
  std::vector<NGramWindow> windows;
  if (position >= words.size()) return windows;
  for (int order : orders.Descending()) {
    const auto n = static_cast<std::size_t>(order);
    if (position + 1 < n) continue;
    const std::size_t start = position + 1 - n;
    windows.push_back(
        {order, JoinWords(words, start, n - 1), words[position], start});
  }
  return windows;
}

}  // namespace arianna
