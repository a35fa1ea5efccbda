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

#include "annotation/registry.hpp"

#include <chrono>
#include <ctime>
#include <set>

#include "common/error.hpp"
#include "json.hpp"

namespace fidaudit {

using json = nlohmann::ordered_json;

LabelRegistry::LabelRegistry(std::shared_ptr<const FeatureSchema> schema,
                             std::vector<NewSubjectEntry> new_subjects)
    : schema_(std::move(schema)), new_subjects_(std::move(new_subjects)) {
  std::set<std::string_view> names;
  for (const NewSubjectEntry& e : new_subjects_) {
    if (e.name.empty() || NormalizeSubjectName(e.name) != e.name) {
      throw Error(ErrorCode::kValidation,
                  "registry subject \"" + e.name + "\" is not normalized");
    }
    if (schema_->Find(e.name) != nullptr) {
      throw Error(ErrorCode::kNameCollision,
                  "registry subject \"" + e.name + "\" clashes with a schema key");
    }
    if (!names.insert(e.name).second) {
      throw Error(ErrorCode::kDuplicateId,
                  "registry subject \"" + e.name + "\" listed twice");
    }
  }
}

std::vector<std::string> LabelRegistry::SchemaLabels() const {
  std::vector<std::string> out;
  for (const FeatureDef& f : schema_->features()) {
    out.push_back(RenderLabel(Label::SchemaFeature(f.key), *schema_));
  }
  return out;
}

bool LabelRegistry::HasSubject(std::string_view normalized_name) const {
  for (const NewSubjectEntry& e : new_subjects_) {
    if (e.name == normalized_name) return true;
  }
  return false;
}

bool LabelRegistry::Contains(const Label& label) const {
  switch (label.kind) {
    case Label::Kind::kSchemaFeature:
      return schema_->Find(label.name) != nullptr;
    case Label::Kind::kNewSubject:
      return HasSubject(label.name);
    case Label::Kind::kAspect:
    case Label::Kind::kSpecialization:
      return true;
  }
  return false;
}

std::string LabelRegistry::Serialize() const {
  json doc;
  doc["new_subjects"] = json::array();
  for (const NewSubjectEntry& e : new_subjects_) {
    json item;
    item["name"] = e.name;
    item["annotator_id"] = e.annotator_id;
    item["created_at"] = e.created_at;
    doc["new_subjects"].push_back(std::move(item));
  }
  return doc.dump(2) + "\n";
}

LabelRegistry LabelRegistry::Parse(std::string_view text,
                                   std::shared_ptr<const FeatureSchema> schema) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, std::string("label registry: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("new_subjects") ||
      !doc["new_subjects"].is_array()) {
    throw Error(ErrorCode::kParse, "label registry: missing array new_subjects");
  }
  std::vector<NewSubjectEntry> entries;
  for (const json& item : doc["new_subjects"]) {
    if (!item.is_object() || !item.contains("name") || !item["name"].is_string()) {
      throw Error(ErrorCode::kParse, "label registry: malformed entry");
    }
    NewSubjectEntry e;
    e.name = item["name"].get<std::string>();
    e.annotator_id = item.value("annotator_id", "");
    e.created_at = item.value("created_at", "");
    entries.push_back(std::move(e));
  }
  return LabelRegistry(std::move(schema), std::move(entries));
}

LabelRegistry MintNewSubject(const LabelRegistry& registry,
                             std::string_view name,
                             std::string_view annotator_id,
                             std::string_view timestamp) {
  const std::string normalized = NormalizeSubjectName(name);
  if (normalized.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "subject name \"" + std::string(name) + "\" is empty after normalization");
  }
  if (registry.schema().Find(normalized) != nullptr) {
    throw Error(ErrorCode::kNameCollision,
                "subject \"" + normalized + "\" clashes with schema label " +
                    RenderLabel(Label::SchemaFeature(normalized), registry.schema()));
  }
  if (registry.HasSubject(normalized)) return registry;
  std::vector<NewSubjectEntry> entries = registry.new_subjects();
  entries.push_back(NewSubjectEntry{normalized, std::string(annotator_id),
                                    std::string(timestamp)});
  return LabelRegistry(registry.schema_ptr(), std::move(entries));
}

std::string CurrentTimestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

}  // namespace fidaudit
