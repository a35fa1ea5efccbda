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

#ifndef FIDAUDIT_FIDELITY_FIDELITY_HPP_
#define FIDAUDIT_FIDELITY_FIDELITY_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "annotation/annotation.hpp"
#include "corpus/schema.hpp"

namespace fidaudit {

// Type-1 mismatch tallies for one (document, annotator) pair, plus the
// Type-2 omitted-subject count.
//
//   fidelity         = additional_schema + new_subjects + aspects
//                      + specializations
//   omitted_subjects = |schema features| - distinct_schema_labels
struct ComponentCounts {
  std::int64_t additional_schema = 0;  // schema labels beyond first occurrence
  std::int64_t new_subjects = 0;
  std::int64_t aspects = 0;
  std::int64_t specializations = 0;
  std::int64_t distinct_schema_labels = 0;
  std::int64_t omitted_subjects = 0;
  std::int64_t fidelity = 0;

  // Fills the derived fields; throws Error(kInternal) if any count would be
  // negative.
  static ComponentCounts Make(std::int64_t additional_schema,
                              std::int64_t new_subjects, std::int64_t aspects,
                              std::int64_t specializations,
                              std::int64_t distinct_schema_labels,
                              std::size_t schema_size);

  // additional schema + new subjects + aspects
  std::int64_t additional_aspects() const {
    return additional_schema + new_subjects + aspects;
  }

  bool IsConsistent(std::size_t schema_size) const;

  bool operator==(const ComponentCounts&) const = default;
};

// Counts span-label assignments of one annotation. A span carrying several
// labels contributes to each of them. Throws kSchemaMismatch for a schema
// label whose key the schema does not define.
ComponentCounts CountComponents(const AnnotationDoc& doc,
                                const FeatureSchema& schema);

// Real-valued counterpart of ComponentCounts used for averages and spreads.
struct ComponentAverages {
  double additional_schema = 0;
  double new_subjects = 0;
  double aspects = 0;
  double specializations = 0;
  double additional_aspects = 0;
  double distinct_schema_labels = 0;
  double omitted_subjects = 0;
  double fidelity = 0;
};

struct AnnotationKey {
  std::string doc_id;
  std::string annotator_id;

  auto operator<=>(const AnnotationKey&) const = default;
};

struct DocumentSummary {
  std::string doc_id;
  std::size_t annotators = 0;
  ComponentAverages averages;
};

struct FidelityReport {
  std::string label;
  std::map<AnnotationKey, ComponentCounts> per_annotation;
  std::vector<DocumentSummary> per_document;  // sorted by doc_id
  ComponentAverages mean;    // over document averages
  ComponentAverages stddev;  // population std over document averages
};

// Averages over each document's annotators, then over documents.
// Throws kEmptyInput.
FidelityReport Aggregate(const std::map<AnnotationKey, ComponentCounts>& counts,
                         std::string label = {});

struct RankingRow {
  int rank = 0;
  std::string label;
  std::size_t documents = 0;
  ComponentAverages mean;
  ComponentAverages stddev;
};

// Orders systems by mean fidelity, highest first; equal means keep label
// order. Throws kInsufficientData for fewer than two reports.
std::vector<RankingRow> CompareSystems(std::span<const FidelityReport> reports);

// Report files written into a directory: report.json, per_annotation.csv,
// per_document.csv, summary.csv.
void WriteReport(const FidelityReport& report, const std::filesystem::path& dir);
std::string ReportToJson(const FidelityReport& report);
// Accepts the report directory or the report.json path.
FidelityReport LoadReport(const std::filesystem::path& path);
std::string RankingToCsv(std::span<const RankingRow> rows);

// Component columns in canonical order, with accessors, shared by the CSV
// writers and the correlation table.
struct ComponentColumn {
  const char* name;
  double ComponentAverages::*field;
};
std::span<const ComponentColumn> ComponentColumns();

}  // namespace fidaudit

#endif  // FIDAUDIT_FIDELITY_FIDELITY_HPP_
