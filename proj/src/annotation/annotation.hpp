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

#ifndef FIDAUDIT_ANNOTATION_ANNOTATION_HPP_
#define FIDAUDIT_ANNOTATION_ANNOTATION_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "annotation/label.hpp"
#include "annotation/registry.hpp"
#include "corpus/schema.hpp"

namespace fidaudit {

// Half-open interval [start, end) of code points carrying one or more labels.
struct Span {
  std::int64_t start = 0;
  std::int64_t end = 0;
  std::vector<Label> labels;  // distinct, in the order given

  bool operator==(const Span&) const = default;
};

// One annotator's labeling of one self-description.
struct AnnotationDoc {
  std::string doc_id;
  std::string annotator_id;
  std::int64_t version = 0;
  std::vector<Span> spans;

  // Fraction of the text's code points covered by at least one span.
  double coverage_ratio(std::size_t text_len) const;

  bool operator==(const AnnotationDoc&) const = default;
};

// Union length of the span intervals divided by text_len; 0 for an empty
// doc or empty text.
double Coverage(const AnnotationDoc& doc, std::size_t text_len);

// Returns a copy of `doc` with `span` appended. The version is left alone;
// it only moves when the store persists the document.
// Throws kOutOfBounds, kEmptyLabelSet or kUnknownLabel.
AnnotationDoc AddSpan(const AnnotationDoc& doc, Span span, std::size_t text_len,
                      const LabelRegistry& registry);

// Bounds and label checks for a whole document. `registry` may be null, in
// which case new-subject labels are not checked for membership.
void ValidateAnnotation(const AnnotationDoc& doc, std::size_t text_len,
                        const LabelRegistry* registry);

// The annotation file format: one JSON object with doc_id, annotator_id,
// version and spans [{start, end, labels: [rendered labels]}].
AnnotationDoc ParseAnnotation(std::string_view text, const FeatureSchema& schema);
std::string SerializeAnnotation(const AnnotationDoc& doc,
                                const FeatureSchema& schema);

// Layout of an annotations directory: <dir>/<annotator>/<doc>.json, with
// identifiers percent-encoded, plus <dir>/labels.json for the registry.
inline constexpr char kRegistryFile[] = "labels.json";
std::filesystem::path AnnotationPath(const std::filesystem::path& dir,
                                     std::string_view doc_id,
                                     std::string_view annotator_id);

// Loads every annotation file under `dir` (sorted by path). Identity comes
// from file content. Throws kDuplicateId if a (doc, annotator) repeats.
std::vector<AnnotationDoc> LoadAnnotationDir(const std::filesystem::path& dir,
                                             const FeatureSchema& schema);

}  // namespace fidaudit

#endif  // FIDAUDIT_ANNOTATION_ANNOTATION_HPP_
