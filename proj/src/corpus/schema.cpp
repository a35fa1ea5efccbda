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

#include "corpus/schema.hpp"

#include <set>

#include "common/error.hpp"
#include "common/io.hpp"
#include "json.hpp"

namespace fidaudit {

using json = nlohmann::ordered_json;

const std::string* FeatureDef::Decode(std::string_view raw) const {
  for (const auto& [code, text] : value_map) {
    if (code == raw) return &text;
  }
  return nullptr;
}

FeatureSchema::FeatureSchema(std::string name, std::vector<FeatureDef> features)
    : name_(std::move(name)), features_(std::move(features)) {
  if (name_.empty()) {
    throw Error(ErrorCode::kSchema, "schema name must be non-empty");
  }
  for (std::size_t i = 0; i < features_.size(); ++i) {
    const FeatureDef& f = features_[i];
    if (f.key.empty()) {
      throw Error(ErrorCode::kSchema,
                  "feature #" + std::to_string(i + 1) + " has an empty key");
    }
    if (!index_.emplace(f.key, i).second) {
      throw Error(ErrorCode::kSchema, "duplicate feature key \"" + f.key + "\"");
    }
    if (f.kind == FeatureKind::kCategorical) {
      if (f.value_map.empty()) {
        throw Error(ErrorCode::kSchema,
                    "categorical feature \"" + f.key + "\" has no value_map");
      }
      std::set<std::string_view> codes;
      for (const auto& entry : f.value_map) {
        if (!codes.insert(entry.first).second) {
          throw Error(ErrorCode::kSchema, "feature \"" + f.key +
                                              "\" repeats code \"" +
                                              entry.first + "\"");
        }
      }
      if (!f.unit.empty()) {
        throw Error(ErrorCode::kSchema,
                    "categorical feature \"" + f.key + "\" has a unit");
      }
    } else if (!f.value_map.empty()) {
      throw Error(ErrorCode::kSchema,
                  "numeric feature \"" + f.key + "\" has a value_map");
    }
  }
}

const FeatureDef* FeatureSchema::Find(std::string_view key) const {
  const auto idx = IndexOf(key);
  return idx ? &features_[*idx] : nullptr;
}

std::optional<std::size_t> FeatureSchema::IndexOf(std::string_view key) const {
  const auto it = index_.find(std::string(key));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

namespace {

std::string RequireString(const json& obj, const char* field,
                          const std::string& where) {
  const auto it = obj.find(field);
  if (it == obj.end() || !it->is_string()) {
    throw Error(ErrorCode::kParse,
                where + ": missing or non-string field \"" + field + "\"");
  }
  return it->get<std::string>();
}

}  // namespace

FeatureSchema FeatureSchema::Parse(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, std::string("schema: ") + e.what());
  }
  if (!doc.is_object()) {
    throw Error(ErrorCode::kParse, "schema: top level must be an object");
  }
  const std::string name = RequireString(doc, "name", "schema");
  const auto features_it = doc.find("features");
  if (features_it == doc.end() || !features_it->is_array()) {
    throw Error(ErrorCode::kParse, "schema: missing array \"features\"");
  }
  std::vector<FeatureDef> features;
  for (std::size_t i = 0; i < features_it->size(); ++i) {
    const json& item = (*features_it)[i];
    const std::string where = "schema feature #" + std::to_string(i + 1);
    if (!item.is_object()) {
      throw Error(ErrorCode::kParse, where + ": must be an object");
    }
    FeatureDef def;
    def.key = RequireString(item, "key", where);
    def.display_name = RequireString(item, "display_name", where);
    const std::string kind = RequireString(item, "kind", where);
    if (kind == "categorical") {
      def.kind = FeatureKind::kCategorical;
    } else if (kind == "numeric") {
      def.kind = FeatureKind::kNumeric;
    } else {
      throw Error(ErrorCode::kParse, where + ": unknown kind \"" + kind + "\"");
    }
    if (const auto vm = item.find("value_map"); vm != item.end()) {
      if (!vm->is_object()) {
        throw Error(ErrorCode::kParse, where + ": value_map must be an object");
      }
      for (const auto& [code, decoded] : vm->items()) {
        if (!decoded.is_string()) {
          throw Error(ErrorCode::kParse,
                      where + ": value_map entry \"" + code + "\" not a string");
        }
        def.value_map.emplace_back(code, decoded.get<std::string>());
      }
    }
    if (const auto unit = item.find("unit"); unit != item.end()) {
      if (!unit->is_string()) {
        throw Error(ErrorCode::kParse, where + ": unit must be a string");
      }
      def.unit = unit->get<std::string>();
    }
    features.push_back(std::move(def));
  }
  return FeatureSchema(name, std::move(features));
}

std::string FeatureSchema::Serialize() const {
  json doc;
  doc["name"] = name_;
  doc["features"] = json::array();
  for (const FeatureDef& f : features_) {
    json item;
    item["key"] = f.key;
    item["display_name"] = f.display_name;
    if (f.kind == FeatureKind::kCategorical) {
      item["kind"] = "categorical";
      json vm = json::object();
      for (const auto& [code, text] : f.value_map) vm[code] = text;
      item["value_map"] = std::move(vm);
    } else {
      item["kind"] = "numeric";
      item["unit"] = f.unit;
    }
    doc["features"].push_back(std::move(item));
  }
  return doc.dump(2) + "\n";
}

FeatureSchema LoadSchema(const std::filesystem::path& path) {
  const std::string text = ReadFile(path);
  try {
    return FeatureSchema::Parse(text);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

}  // namespace fidaudit
