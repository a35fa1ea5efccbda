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

#include "annotation/label.hpp"

#include "common/error.hpp"
#include "common/text.hpp"

namespace fidaudit {

std::string RenderLabel(const Label& label, const FeatureSchema& schema) {
  switch (label.kind) {
    case Label::Kind::kSchemaFeature:
      return schema.name() + "_" + label.name;
    case Label::Kind::kNewSubject:
      return kNewSubjectPrefix + label.name;
    case Label::Kind::kAspect:
      return kAspectLabel;
    case Label::Kind::kSpecialization:
      return kSpecializationLabel;
  }
  return {};
}

Label ParseLabel(std::string_view rendered, const FeatureSchema& schema) {
  if (rendered == kAspectLabel) return Label::Aspect();
  if (rendered == kSpecializationLabel) return Label::Specialization();
  const std::string schema_prefix = schema.name() + "_";
  if (rendered.starts_with(schema_prefix)) {
    const std::string_view key = rendered.substr(schema_prefix.size());
    if (schema.Find(key) != nullptr) return Label::SchemaFeature(std::string(key));
    throw Error(ErrorCode::kUnknownLabel,
                "label \"" + std::string(rendered) + "\" names no schema feature");
  }
  if (rendered.starts_with(kNewSubjectPrefix)) {
    const std::string_view name = rendered.substr(sizeof(kNewSubjectPrefix) - 1);
    if (!name.empty() && NormalizeSubjectName(name) == name) {
      return Label::NewSubject(std::string(name));
    }
  }
  throw Error(ErrorCode::kUnknownLabel,
              "unknown label \"" + std::string(rendered) + "\"");
}

std::string NormalizeSubjectName(std::string_view name) {
  std::u32string out;
  bool pending_separator = false;
  for (char32_t c : DecodeUtf8(name)) {
    const bool keep = c >= 0x80 ? IsLetterOrDigit(c)
                                : ((c >= 'a' && c <= 'z') ||
                                   (c >= 'A' && c <= 'Z') ||
                                   (c >= '0' && c <= '9'));
    if (!keep) {
      pending_separator = true;
      continue;
    }
    if (pending_separator && !out.empty()) out.push_back(U'_');
    pending_separator = false;
    out.push_back(ToLower(c));
  }
  return EncodeUtf8(out);
}

}  // namespace fidaudit
