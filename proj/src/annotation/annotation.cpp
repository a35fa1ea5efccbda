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

#include "annotation/annotation.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "common/error.hpp"
#include "common/io.hpp"
#include "json.hpp"

namespace fidaudit {

using json = nlohmann::ordered_json;

double Coverage(const AnnotationDoc& doc, std::size_t text_len) {
  if (text_len == 0 || doc.spans.empty()) return 0.0;
  std::vector<std::pair<std::int64_t, std::int64_t>> intervals;
  intervals.reserve(doc.spans.size());
  for (const Span& s : doc.spans) intervals.emplace_back(s.start, s.end);
  std::sort(intervals.begin(), intervals.end());
  std::int64_t covered = 0;
  std::int64_t cur_start = intervals.front().first;
  std::int64_t cur_end = intervals.front().second;
  for (std::size_t i = 1; i < intervals.size(); ++i) {
    if (intervals[i].first <= cur_end) {
      cur_end = std::max(cur_end, intervals[i].second);
    } else {
      covered += cur_end - cur_start;
      cur_start = intervals[i].first;
      cur_end = intervals[i].second;
    }
  }
  covered += cur_end - cur_start;
  return static_cast<double>(covered) / static_cast<double>(text_len);
}

double AnnotationDoc::coverage_ratio(std::size_t text_len) const {
  return Coverage(*this, text_len);
}

namespace {

void CheckSpan(const Span& span, std::size_t text_len,
               const LabelRegistry* registry, std::size_t index) {
  const std::string where = "span #" + std::to_string(index + 1);
  if (span.start < 0 || span.start >= span.end ||
      span.end > static_cast<std::int64_t>(text_len)) {
    throw Error(ErrorCode::kOutOfBounds,
                where + " [" + std::to_string(span.start) + "," +
                    std::to_string(span.end) + ") outside text of length " +
                    std::to_string(text_len));
  }
  if (span.labels.empty()) {
    throw Error(ErrorCode::kEmptyLabelSet, where + " has no labels");
  }
  if (registry != nullptr) {
    for (const Label& label : span.labels) {
      if (!registry->Contains(label)) {
        throw Error(ErrorCode::kUnknownLabel,
                    where + ": label \"" +
                        RenderLabel(label, registry->schema()) +
                        "\" is not registered");
      }
    }
  }
}

void DedupeLabels(std::vector<Label>& labels) {
  std::vector<Label> unique;
  for (Label& l : labels) {
    if (std::find(unique.begin(), unique.end(), l) == unique.end()) {
      unique.push_back(std::move(l));
    }
  }
  labels = std::move(unique);
}

}  // namespace

AnnotationDoc AddSpan(const AnnotationDoc& doc, Span span, std::size_t text_len,
                      const LabelRegistry& registry) {
  DedupeLabels(span.labels);
  CheckSpan(span, text_len, &registry, doc.spans.size());
  AnnotationDoc out = doc;
  out.spans.push_back(std::move(span));
  return out;
}

void ValidateAnnotation(const AnnotationDoc& doc, std::size_t text_len,
                        const LabelRegistry* registry) {
  for (std::size_t i = 0; i < doc.spans.size(); ++i) {
    CheckSpan(doc.spans[i], text_len, registry, i);
  }
}

AnnotationDoc ParseAnnotation(std::string_view text,
                              const FeatureSchema& schema) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, std::string("annotation: ") + e.what());
  }
  if (!root.is_object()) {
    throw Error(ErrorCode::kParse, "annotation: top level must be an object");
  }
  AnnotationDoc doc;
  try {
    doc.doc_id = root.at("doc_id").get<std::string>();
    doc.annotator_id = root.at("annotator_id").get<std::string>();
    doc.version = root.at("version").get<std::int64_t>();
    const json& spans = root.at("spans");
    if (!spans.is_array()) throw Error(ErrorCode::kParse, "spans must be an array");
    for (const json& item : spans) {
      Span span;
      span.start = item.at("start").get<std::int64_t>();
      span.end = item.at("end").get<std::int64_t>();
      for (const json& label : item.at("labels")) {
        span.labels.push_back(ParseLabel(label.get<std::string>(), schema));
      }
      DedupeLabels(span.labels);
      doc.spans.push_back(std::move(span));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("annotation: ") + e.what());
  }
  if (doc.doc_id.empty() || doc.annotator_id.empty()) {
    throw Error(ErrorCode::kParse, "annotation: empty doc_id or annotator_id");
  }
  if (doc.version < 0) {
    throw Error(ErrorCode::kParse, "annotation: negative version");
  }
  for (std::size_t i = 0; i < doc.spans.size(); ++i) {
    const Span& s = doc.spans[i];
    if (s.start < 0 || s.start >= s.end) {
      throw Error(ErrorCode::kOutOfBounds,
                  "annotation: span #" + std::to_string(i + 1) + " is empty or negative");
    }
    if (s.labels.empty()) {
      throw Error(ErrorCode::kEmptyLabelSet,
                  "annotation: span #" + std::to_string(i + 1) + " has no labels");
    }
  }
  return doc;
}

std::string SerializeAnnotation(const AnnotationDoc& doc,
                                const FeatureSchema& schema) {
  json root;
  root["doc_id"] = doc.doc_id;
  root["annotator_id"] = doc.annotator_id;
  root["version"] = doc.version;
  root["spans"] = json::array();
  for (const Span& s : doc.spans) {
    json item;
    item["start"] = s.start;
    item["end"] = s.end;
    item["labels"] = json::array();
    for (const Label& l : s.labels) item["labels"].push_back(RenderLabel(l, schema));
    root["spans"].push_back(std::move(item));
  }
  return root.dump(2) + "\n";
}

std::filesystem::path AnnotationPath(const std::filesystem::path& dir,
                                     std::string_view doc_id,
                                     std::string_view annotator_id) {
  return dir / EncodePathComponent(annotator_id) /
         (EncodePathComponent(doc_id) + ".json");
}

std::vector<AnnotationDoc> LoadAnnotationDir(const std::filesystem::path& dir,
                                             const FeatureSchema& schema) {
  if (!std::filesystem::is_directory(dir)) {
    throw Error(ErrorCode::kIo, "not a directory: " + dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".json") continue;
    if (entry.path().filename() == kRegistryFile &&
        entry.path().parent_path() == dir) {
      continue;
    }
    files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<AnnotationDoc> docs;
  std::set<std::pair<std::string, std::string>> keys;
  for (const auto& path : files) {
    AnnotationDoc doc;
    try {
      doc = ParseAnnotation(ReadFile(path), schema);
    } catch (const Error& e) {
      throw Error(e.code(), path.string() + ": " + e.what());
    }
    if (!keys.emplace(doc.doc_id, doc.annotator_id).second) {
      throw Error(ErrorCode::kDuplicateId,
                  path.string() + ": second annotation for (" + doc.doc_id +
                      ", " + doc.annotator_id + ")");
    }
    docs.push_back(std::move(doc));
  }
  return docs;
}

}  // namespace fidaudit
