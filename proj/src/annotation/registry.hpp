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

#ifndef FIDAUDIT_ANNOTATION_REGISTRY_HPP_
#define FIDAUDIT_ANNOTATION_REGISTRY_HPP_

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "annotation/label.hpp"
#include "corpus/schema.hpp"

namespace fidaudit {

struct NewSubjectEntry {
  std::string name;  // normalized
  std::string annotator_id;
  std::string created_at;  // ISO-8601 UTC

  bool operator==(const NewSubjectEntry&) const = default;
};

// Labels available for annotation: read-only schema labels plus an
// append-only set of minted new-subject labels shared across the dataset.
class LabelRegistry {
 public:
  explicit LabelRegistry(std::shared_ptr<const FeatureSchema> schema,
                         std::vector<NewSubjectEntry> new_subjects = {});

  const FeatureSchema& schema() const { return *schema_; }
  std::shared_ptr<const FeatureSchema> schema_ptr() const { return schema_; }

  // Rendered schema labels in schema order.
  std::vector<std::string> SchemaLabels() const;
  const std::vector<NewSubjectEntry>& new_subjects() const {
    return new_subjects_;
  }

  bool HasSubject(std::string_view normalized_name) const;
  bool Contains(const Label& label) const;

  // Canonical labels.json content.
  std::string Serialize() const;
  static LabelRegistry Parse(std::string_view text,
                             std::shared_ptr<const FeatureSchema> schema);

 private:
  std::shared_ptr<const FeatureSchema> schema_;
  std::vector<NewSubjectEntry> new_subjects_;
};

// Returns the registry extended by the normalized subject. Minting an
// existing name returns the registry unchanged. Throws kNameCollision when
// the normalized name equals a schema key and kInvalidArgument when nothing
// is left after normalization.
LabelRegistry MintNewSubject(const LabelRegistry& registry,
                             std::string_view name,
                             std::string_view annotator_id,
                             std::string_view timestamp);

std::string CurrentTimestamp();

}  // namespace fidaudit

#endif  // FIDAUDIT_ANNOTATION_REGISTRY_HPP_
