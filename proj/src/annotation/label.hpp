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

#ifndef FIDAUDIT_ANNOTATION_LABEL_HPP_
#define FIDAUDIT_ANNOTATION_LABEL_HPP_

#include <compare>
#include <string>
#include <string_view>

#include "corpus/schema.hpp"

namespace fidaudit {

// One of the four label types an annotator can put on a span.
struct Label {
  enum class Kind { kSchemaFeature, kNewSubject, kAspect, kSpecialization };

  Kind kind = Kind::kAspect;
  std::string name;  // feature key or normalized subject name; empty otherwise

  static Label SchemaFeature(std::string key) {
    return {Kind::kSchemaFeature, std::move(key)};
  }
  static Label NewSubject(std::string name) {
    return {Kind::kNewSubject, std::move(name)};
  }
  static Label Aspect() { return {Kind::kAspect, {}}; }
  static Label Specialization() { return {Kind::kSpecialization, {}}; }

  auto operator<=>(const Label&) const = default;
};

inline constexpr char kAspectLabel[] = "aspect";
inline constexpr char kSpecializationLabel[] = "specialization";
inline constexpr char kNewSubjectPrefix[] = "new_";

// "GCD_purpose", "new_pet", "aspect", "specialization".
std::string RenderLabel(const Label& label, const FeatureSchema& schema);

// Inverse of RenderLabel. Schema labels must name an existing key and new
// subject names must already be normalized. Throws Error(kUnknownLabel).
Label ParseLabel(std::string_view rendered, const FeatureSchema& schema);

// Lowercases, collapses every run of ASCII non-alphanumerics into a single
// underscore and strips leading/trailing underscores: "Side Income" ->
// "side_income". Non-ASCII letters and digits are kept (lowercased).
std::string NormalizeSubjectName(std::string_view name);

}  // namespace fidaudit

#endif  // FIDAUDIT_ANNOTATION_LABEL_HPP_
