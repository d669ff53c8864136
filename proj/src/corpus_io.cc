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

#include "arianna/corpus_io.h"

#include <openssl/evp.h>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iterator>
#include <sstream>
#include <system_error>
#include <utility>

#include "arianna/error.h"

namespace arianna {
namespace fs = std::filesystem;

CorpusSource CorpusSource::FromLiteral(std::string text) {
  CorpusSource source;
  source.literal = std::move(text);
  return source;
}

CorpusSource CorpusSource::FromPaths(std::vector<fs::path> paths,
                                     std::string extension) {
  CorpusSource source;
  source.paths = std::move(paths);
  source.extension = std::move(extension);
  return source;
}

std::optional<std::size_t> FindInvalidUtf8(std::string_view bytes) {
  const auto* s = reinterpret_cast<const unsigned char*>(bytes.data());
  const std::size_t n = bytes.size();
  std::size_t i = 0;
  while (i < n) {
    const unsigned char c = s[i];
    if (c < 0x80) {
      ++i;
      continue;
    }
    std::size_t len;
    unsigned char lo = 0x80, hi = 0xBF;
    if (c >= 0xC2 && c <= 0xDF) {
      len = 2;
    } else if (c >= 0xE0 && c <= 0xEF) {
      len = 3;
      if (c == 0xE0) lo = 0xA0;
      if (c == 0xED) hi = 0x9F;
    } else if (c >= 0xF0 && c <= 0xF4) {
      len = 4;
      if (c == 0xF0) lo = 0x90;
      if (c == 0xF4) hi = 0x8F;
    } else {
      return i;
    }
    if (i + len > n) return i;
    if (s[i + 1] < lo || s[i + 1] > hi) return i;
    for (std::size_t k = 2; k < len; ++k) {
      if (s[i + k] < 0x80 || s[i + k] > 0xBF) return i;
    }
    i += len;
  }
  return std::nullopt;
}

std::string Sha256Hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(),
                 nullptr) != 1) {
    throw Error(ErrorCode::kIo, "SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(length * 2);
  for (unsigned int i = 0; i < length; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

std::string ReadFileBytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  return bytes;
}

void WriteFileBytes(const fs::path& path, std::string_view bytes) {
  static std::atomic<unsigned> counter{0};
  fs::path tmp = path;
  tmp += ".tmp" + std::to_string(counter.fetch_add(1));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorCode::kIo, "cannot write " + path.string());
  }
}

std::vector<fs::path> ExpandPaths(const CorpusSource& source) {
  std::vector<fs::path> files;
  for (const fs::path& p : source.paths) {
    std::error_code ec;
    if (fs::is_directory(p, ec)) {
      for (const auto& entry : fs::recursive_directory_iterator(p, ec)) {
        if (!entry.is_regular_file()) continue;
        if (!source.extension.empty() &&
            entry.path().extension() != source.extension) {
          continue;
        }
        files.push_back(entry.path());
      }
      if (ec) throw Error(ErrorCode::kIo, "cannot list " + p.string());
    } else if (fs::exists(p, ec)) {
      files.push_back(p);
    } else {
      throw Error(ErrorCode::kIo, "no such file: " + p.string());
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

Corpus ReadCorpus(const CorpusSource& source) {
  Corpus corpus;
  if (source.literal) {
    if (auto bad = FindInvalidUtf8(*source.literal)) {
      throw EncodingError("", *bad);
    }
    corpus.text = *source.literal;
  } else {
    corpus.files = ExpandPaths(source);
    for (std::size_t i = 0; i < corpus.files.size(); ++i) {
      std::string bytes = ReadFileBytes(corpus.files[i]);
      if (auto bad = FindInvalidUtf8(bytes)) {
        throw EncodingError(corpus.files[i].string(), *bad);
      }
      if (i > 0) corpus.text.push_back('\n');
      corpus.text += bytes;
    }
  }
  corpus.checksum = Sha256Hex(corpus.text);
  return corpus;
}

}  // namespace arianna
