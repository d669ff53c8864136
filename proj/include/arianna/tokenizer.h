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

#ifndef ARIANNA_TOKENIZER_H_
#define ARIANNA_TOKENIZER_H_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace arianna {

inline constexpr int kMinOrder = 3;
inline constexpr int kMaxOrder = 5;
inline constexpr char kContextJoiner = '_';

// A subset of the supported n-gram orders {3, 4, 5}.
class OrderSet {
 public:
  // The empty set.
  OrderSet() = default;
  // Throws Error(kInvalidOrder) for any order outside [3, 5].
  OrderSet(std::initializer_list<int> orders);
  static OrderSet FromVector(std::span<const int> orders);
  static OrderSet All() { return OrderSet{3, 4, 5}; }
  // Parses a comma list such as "3,4,5".
  static OrderSet Parse(std::string_view text);

  bool contains(int order) const;
  bool empty() const { return bits_ == 0; }
  std::size_t size() const;
  void insert(int order);

  std::vector<int> Ascending() const;
  std::vector<int> Descending() const;
  // "3,4,5" style, ascending.
  std::string ToString() const;
  int Smallest() const;

  friend bool operator==(const OrderSet&, const OrderSet&) = default;

 private:
  std::uint8_t bits_ = 0;
};

struct ByteSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
  friend bool operator==(const ByteSpan&, const ByteSpan&) = default;
};

struct Token {
  std::string text;
  std::size_t index = 0;
  // Bytes of the kept word core in the original input (before folding).
  ByteSpan span;
  friend bool operator==(const Token&, const Token&) = default;
};

struct NGramWindow {
  int order = 0;
  std::string context;
  std::string last_word;
  std::size_t start_index = 0;
  friend bool operator==(const NGramWindow&, const NGramWindow&) = default;
};

// Splits on Unicode whitespace, strips punctuation and symbol code points
// (general categories P* and S*) from both token edges, lowercases, and
// rewrites interior underscores to hyphens. Chunks that are all
// punctuation are dropped. Invalid UTF-8 bytes are carried through as-is.
std::vector<Token> Tokenize(std::string_view text);

std::vector<std::string> Words(std::span<const Token> tokens);

// Convenience for callers that only need the normalized word stream.
std::vector<std::string> TokenizeWords(std::string_view text);

// Joins words[begin, begin + count) with the context joiner.
std::string JoinWords(std::span<const std::string> words, std::size_t begin,
                      std::size_t count);

// Windows grouped by order descending, then start index ascending.
std::vector<NGramWindow> ExtractNGrams(std::span<const std::string> words,
                                       const OrderSet& orders);
std::vector<NGramWindow> ExtractNGrams(std::span<const Token> tokens,
                                       const OrderSet& orders);

// Every window of the requested orders whose last word is words[position],
// highest order first. Orders that would start before word 0 are skipped.
std::vector<NGramWindow> WindowsEndingAt(std::span<const std::string> words,
                                         std::size_t position,
                                         const OrderSet& orders);

}  // namespace arianna

#endif  // ARIANNA_TOKENIZER_H_
