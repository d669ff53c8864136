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

#ifndef ARIANNA_TESTS_TEST_SUPPORT_H_
#define ARIANNA_TESTS_TEST_SUPPORT_H_

#include <atomic>
#include <filesystem>
#include <random>
#include <string>
#include <unistd.h>

#include "arianna/corpus_io.h"
#include "arianna/model_io.h"
#include "arianna/ngram_model.h"

namespace arianna::testing {

inline std::filesystem::path TestPath(const std::string& relative) {
  return std::filesystem::path(ARIANNA_TEST_DIR) / relative;
}

inline std::string JaneEyreText() {
  return ReadFileBytes(TestPath("data/jane_eyre_p1.txt"));
}

inline ConsistencyModel JaneEyreModel() {
  BuildOptions options;
  options.name = "je";
  return ConsistencyModel::Build(JaneEyreText(), options);
}

inline ConsistencyModel ExternalFixture() {
  return LoadModel(TestPath("data/external_fixture.model")).model;
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("arianna-test-" + std::to_string(::getpid()) + "-" +
             std::to_string(counter++) + "-" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const {
    return path_ / name;
  }

 private:
  std::filesystem::path path_;
};

}  // namespace arianna::testing

#endif  // ARIANNA_TESTS_TEST_SUPPORT_H_
