// Copyright 2026 The fidaudit Authors.
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

#ifndef FIDAUDIT_TESTS_SUPPORT_TEST_UTIL_HPP_
#define FIDAUDIT_TESTS_SUPPORT_TEST_UTIL_HPP_

#include <stdlib.h>

#include <filesystem>
#include <memory>
#include <stdexcept>
#include <string>

#include "corpus/corpus.hpp"
#include "corpus/schema.hpp"

namespace testutil {

inline std::filesystem::path FixtureDir() { return FIDAUDIT_FIXTURE_DIR; }
inline std::filesystem::path DataDir() { return FIDAUDIT_DATA_DIR; }

inline std::shared_ptr<const fidaudit::FeatureSchema> GcdSchema() {
  static const auto schema = std::make_shared<const fidaudit::FeatureSchema>(
      fidaudit::LoadSchema(DataDir() / "gcd_schema.json"));
  return schema;
}

inline fidaudit::Corpus DeskCorpus() {
  const auto dir = FixtureDir() / "desk";
  auto reps = fidaudit::LoadRepresentations(dir / "german_sample.data",
                                            *GcdSchema());
  auto descs = fidaudit::LoadDescriptions(dir / "descriptions.jsonl");
  return fidaudit::Corpus(*GcdSchema(), std::move(reps), std::move(descs));
}

// Fresh directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::string pattern =
        (std::filesystem::temp_directory_path() / "fidaudit-test-XXXXXX")
            .string();
    if (mkdtemp(pattern.data()) == nullptr) {
      throw std::runtime_error("mkdtemp failed");
    }
    path_ = pattern;
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

}  // namespace testutil

// Asserts that `stmt` throws fidaudit::Error with the given code.
#define EXPECT_FA_ERROR(stmt, error_code)                                 \
  do {                                                                    \
    try {                                                                 \
      stmt;                                                               \
      ADD_FAILURE() << "expected " #error_code " from " #stmt;            \
    } catch (const fidaudit::Error& e) {                                  \
      EXPECT_EQ(e.code(), fidaudit::ErrorCode::error_code) << e.what();   \
    }                                                                     \
  } while (false)

#endif  // FIDAUDIT_TESTS_SUPPORT_TEST_UTIL_HPP_
