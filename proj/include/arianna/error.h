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

#ifndef ARIANNA_ERROR_H_
#define ARIANNA_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace arianna {

enum class ErrorCode {
  kInvalidOrder,
  kInvalidArgument,
  kEmptyText,
  kMissingTrigrams,
  kIo,
  kEncoding,
  kMalformed,
  kVersionMismatch,
  kOutOfRange,
  kInvalidEdit,
  kNothingToUndo,
  kReplayMismatch,
};

std::string_view ErrorCodeName(ErrorCode code);

// Base of every error the library throws. Callers that need structure
// (line numbers, byte offsets, diverging sequence numbers) catch the
// subclasses below.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

class EncodingError : public Error {
 public:
  EncodingError(std::string path, std::size_t byte_offset);

  const std::string& path() const { return path_; }
  std::size_t byte_offset() const { return byte_offset_; }

 private:
  std::string path_;
  std::size_t byte_offset_;
};

// Malformed model or session document. `line` is 1-based; 0 when the
// document is not line oriented.
class MalformedError : public Error {
 public:
  MalformedError(std::size_t line, const std::string& what);

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class ReplayMismatchError : public Error {
 public:
  ReplayMismatchError(int seq, const std::string& detail);

  int seq() const { return seq_; }

 private:
  int seq_;
};

}  // namespace arianna

#endif  // ARIANNA_ERROR_H_
