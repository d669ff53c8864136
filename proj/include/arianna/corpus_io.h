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

#ifndef ARIANNA_CORPUS_IO_H_
#define ARIANNA_CORPUS_IO_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace arianna {

// Where training or evaluation text comes from: either a literal string or
// a list of files and directories. Directories expand to the regular files
// below them whose extension matches `extension` (all files when empty).
struct CorpusSource {
  std::vector<std::filesystem::path> paths;
  std::optional<std::string> literal;
  std::string extension = ".txt";

  static CorpusSource FromLiteral(std::string text);
  static CorpusSource FromPaths(std::vector<std::filesystem::path> paths,
                                std::string extension = ".txt");
};

struct Corpus {
  std::string text;
  // Lowercase hex SHA-256 of `text`.
  std::string checksum;
  // Files in concatenation order; empty for a literal source.
  std::vector<std::filesystem::path> files;
};

// Files are concatenated in sorted path order with a single '\n' between
// them. Throws Error(kIo) for missing or unreadable paths and EncodingError
// for bytes that are not well-formed UTF-8.
Corpus ReadCorpus(const CorpusSource& source);

// Sorted list of files a source expands to.
std::vector<std::filesystem::path> ExpandPaths(const CorpusSource& source);

// Offset of the first byte that is not part of a well-formed UTF-8
// sequence (overlongs, surrogates and values above U+10FFFF included).
std::optional<std::size_t> FindInvalidUtf8(std::string_view bytes);

std::string Sha256Hex(std::string_view bytes);

// Reads a whole file as bytes; throws Error(kIo).
std::string ReadFileBytes(const std::filesystem::path& path);
// Writes atomically via a sibling temporary; throws Error(kIo).
void WriteFileBytes(const std::filesystem::path& path, std::string_view bytes);

}  // namespace arianna

#endif  // ARIANNA_CORPUS_IO_H_
