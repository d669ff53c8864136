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

// Reading and writing the "arianna-model v1" text format:
//
//   #arianna-model v1
//   #meta kind=<internal|external> name=<name> orders=<list>
//         min_frequency=<int> tokens=<int> checksum=<hex>      (one line)
//   <order>\t<context>\t<expected_word>\t<frequency>          (per entry)
//
// UTF-8, LF line endings, records in canonical order. Serialization is a
// pure function of the model, so equal models give identical bytes.

#ifndef ARIANNA_MODEL_IO_H_
#define ARIANNA_MODEL_IO_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "arianna/ngram_model.h"

namespace arianna {

inline constexpr std::string_view kModelMagic = "#arianna-model";
inline constexpr std::string_view kModelVersion = "v1";

struct LoadedModel {
  ConsistencyModel model;
  std::vector<std::string> warnings;
};

std::string SerializeModel(const ConsistencyModel& model);

// Throws Error(kVersionMismatch) for another format version and
// MalformedError (with the 1-based line) for anything unparsable. When
// `expected_checksum` is non-empty and differs from the header checksum a
// warning is recorded instead of failing.
LoadedModel ParseModel(std::string_view document,
                       std::string_view expected_checksum = {});

void SaveModel(const ConsistencyModel& model,
               const std::filesystem::path& destination);
LoadedModel LoadModel(const std::filesystem::path& source,
                      std::string_view expected_checksum = {});

}  // namespace arianna

#endif  // ARIANNA_MODEL_IO_H_
