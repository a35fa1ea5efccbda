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

#ifndef FIDAUDIT_CORPUS_SCHEMA_HPP_
#define FIDAUDIT_CORPUS_SCHEMA_HPP_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace fidaudit {

enum class FeatureKind { kCategorical, kNumeric };

// One feature of the fixed input representation. Categorical features decode
// raw codes through `value_map`; numeric features carry an optional unit.
struct FeatureDef {
  std::string key;
  std::string display_name;
  FeatureKind kind = FeatureKind::kCategorical;
  std::vector<std::pair<std::string, std::string>> value_map;  // file order
  std::string unit;

  // nullptr if `raw` is not a known code.
  const std::string* Decode(std::string_view raw) const;
};

// Ordered, validated feature set. Immutable once constructed.
//
// The schema name prefixes rendered schema labels ("GCD" -> "GCD_purpose").
class FeatureSchema {
 public:
  FeatureSchema() = default;
  // Throws Error(kSchema) when an invariant does not hold.
  FeatureSchema(std::string name, std::vector<FeatureDef> features);

  // Parses the canonical JSON schema format. Throws kParse / kSchema.
  static FeatureSchema Parse(std::string_view text);

  // Canonical text: two-space indented JSON followed by a newline.
  std::string Serialize() const;

  const std::string& name() const { return name_; }
  std::span<const FeatureDef> features() const { return features_; }
  std::size_t size() const { return features_.size(); }

  const FeatureDef* Find(std::string_view key) const;
  std::optional<std::size_t> IndexOf(std::string_view key) const;

 private:
  std::string name_;
  std::vector<FeatureDef> features_;
  std::unordered_map<std::string, std::size_t> index_;
};

FeatureSchema LoadSchema(const std::filesystem::path& path);

}  // namespace fidaudit

#endif  // FIDAUDIT_CORPUS_SCHEMA_HPP_
