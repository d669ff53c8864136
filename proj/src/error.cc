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

#include "arianna/error.h"

#include <string>
#include <utility>

namespace arianna {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidOrder:
      return "invalid-order";
    case ErrorCode::kInvalidArgument:
      return "invalid-argument";
    case ErrorCode::kEmptyText:
      return "empty-text";
    case ErrorCode::kMissingTrigrams:
      return "model-lacks-trigrams";
    case ErrorCode::kIo:
      return "io-error";
    case ErrorCode::kEncoding:
      return "invalid-encoding";
    case ErrorCode::kMalformed:
      return "malformed";
    case ErrorCode::kVersionMismatch:
      return "version-mismatch";
    case ErrorCode::kOutOfRange:
      return "out-of-range";
    case ErrorCode::kInvalidEdit:
      return "invalid-edit";
    case ErrorCode::kNothingToUndo:
      return "nothing-to-undo";
    case ErrorCode::kReplayMismatch:
      return "replay-score-mismatch";
  }
  return "unknown";
}

EncodingError::EncodingError(std::string path, std::size_t byte_offset)
    : Error(ErrorCode::kEncoding,
            "invalid UTF-8 in " + (path.empty() ? std::string("<text>") : path) +
                " at byte offset " + std::to_string(byte_offset)),
      path_(std::move(path)),
      byte_offset_(byte_offset) {}

MalformedError::MalformedError(std::size_t line, const std::string& what)
    : Error(ErrorCode::kMalformed,
            line > 0 ? "line " + std::to_string(line) + ": " + what : what),
      line_(line) {}

ReplayMismatchError::ReplayMismatchError(int seq, const std::string& detail)
    : Error(ErrorCode::kReplayMismatch,
            "replay score mismatch at seq " + std::to_string(seq) +
                (detail.empty() ? "" : ": " + detail)),
      seq_(seq) {}

}  // namespace arianna
