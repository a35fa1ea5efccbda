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

#include "fidelity/fidelity.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "common/error.hpp"

namespace fidaudit {

ComponentCounts ComponentCounts::Make(std::int64_t additional_schema,
                                      std::int64_t new_subjects,
                                      std::int64_t aspects,
                                      std::int64_t specializations,
                                      std::int64_t distinct_schema_labels,
                                      std::size_t schema_size) {
  ComponentCounts c;
  c.additional_schema = additional_schema;
  c.new_subjects = new_subjects;
  c.aspects = aspects;
  c.specializations = specializations;
  c.distinct_schema_labels = distinct_schema_labels;
  c.omitted_subjects =
      static_cast<std::int64_t>(schema_size) - distinct_schema_labels;
  c.fidelity = additional_schema + new_subjects + aspects + specializations;
  if (!c.IsConsistent(schema_size)) {
    throw Error(ErrorCode::kInternal, "inconsistent component counts");
  }
  return c;
}

bool ComponentCounts::IsConsistent(std::size_t schema_size) const {
  return additional_schema >= 0 && new_subjects >= 0 && aspects >= 0 &&
         specializations >= 0 && distinct_schema_labels >= 0 &&
         omitted_subjects >= 0 &&
         fidelity == additional_schema + new_subjects + aspects +
                         specializations &&
         omitted_subjects ==
             static_cast<std::int64_t>(schema_size) - distinct_schema_labels;
}

ComponentCounts CountComponents(const AnnotationDoc& doc,
                                const FeatureSchema& schema) {
  std::int64_t schema_assignments = 0;
  std::int64_t new_subjects = 0;
  std::int64_t aspects = 0;
  std::int64_t specializations = 0;
  std::set<std::string> seen_keys;
  for (const Span& span : doc.spans) {
    std::set<Label> on_span;
    for (const Label& label : span.labels) {
      if (!on_span.insert(label).second) continue;
      switch (label.kind) {
        case Label::Kind::kSchemaFeature:
          if (schema.Find(label.name) == nullptr) {
            throw Error(ErrorCode::kSchemaMismatch,
                        "annotation (" + doc.doc_id + ", " + doc.annotator_id +
                            ") uses unknown schema key \"" + label.name + "\"");
          }
          ++schema_assignments;
          seen_keys.insert(label.name);
          break;
        case Label::Kind::kNewSubject:
          ++new_subjects;
          break;
        case Label::Kind::kAspect:
          ++aspects;
          break;
        case Label::Kind::kSpecialization:
          ++specializations;
          break;
      }
    }
  }
  const auto distinct = static_cast<std::int64_t>(seen_keys.size());
  return ComponentCounts::Make(schema_assignments - distinct, new_subjects,
                               aspects, specializations, distinct,
                               schema.size());
}

namespace {

ComponentAverages ToAverages(const ComponentCounts& c) {
  ComponentAverages a;
  a.additional_schema = static_cast<double>(c.additional_schema);
  a.new_subjects = static_cast<double>(c.new_subjects);
  a.aspects = static_cast<double>(c.aspects);
  a.specializations = static_cast<double>(c.specializations);
  a.additional_aspects = static_cast<double>(c.additional_aspects());
  a.distinct_schema_labels = static_cast<double>(c.distinct_schema_labels);
  a.omitted_subjects = static_cast<double>(c.omitted_subjects);
  a.fidelity = static_cast<double>(c.fidelity);
  return a;
}

}  // namespace

std::span<const ComponentColumn> ComponentColumns() {
  static constexpr ComponentColumn kColumns[] = {
      {"additional_schema", &ComponentAverages::additional_schema},
      {"new_subjects", &ComponentAverages::new_subjects},
      {"aspects", &ComponentAverages::aspects},
      {"additional_aspects", &ComponentAverages::additional_aspects},
      {"specializations", &ComponentAverages::specializations},
      {"distinct_schema_labels", &ComponentAverages::distinct_schema_labels},
      {"omitted_subjects", &ComponentAverages::omitted_subjects},
      {"fidelity", &ComponentAverages::fidelity},
  };
  return kColumns;
}

FidelityReport Aggregate(const std::map<AnnotationKey, ComponentCounts>& counts,
                         std::string label) {
  if (counts.empty()) {
    throw Error(ErrorCode::kEmptyInput, "no annotations to aggregate");
  }
  FidelityReport report;
  report.label = std::move(label);
  report.per_annotation = counts;

  // The map is ordered by (doc_id, annotator_id), so each document's
  // annotations are contiguous.
  for (auto it = counts.begin(); it != counts.end();) {
    DocumentSummary doc;
    doc.doc_id = it->first.doc_id;
    std::vector<ComponentAverages> rows;
    for (; it != counts.end() && it->first.doc_id == doc.doc_id; ++it) {
      rows.push_back(ToAverages(it->second));
    }
    doc.annotators = rows.size();
    for (const ComponentColumn& col : ComponentColumns()) {
      double sum = 0;
      for (const auto& r : rows) sum += r.*col.field;
      doc.averages.*col.field = sum / static_cast<double>(rows.size());
    }
    report.per_document.push_back(std::move(doc));
  }

  const auto n = static_cast<double>(report.per_document.size());
  for (const ComponentColumn& col : ComponentColumns()) {
    double sum = 0;
    for (const auto& d : report.per_document) sum += d.averages.*col.field;
    const double mean = sum / n;
    double sq = 0;
    for (const auto& d : report.per_document) {
      const double delta = d.averages.*col.field - mean;
      sq += delta * delta;
    }
    report.mean.*col.field = mean;
    report.stddev.*col.field = std::sqrt(sq / n);
  }
  return report;
}

std::vector<RankingRow> CompareSystems(std::span<const FidelityReport> reports) {
  if (reports.size() < 2) {
    throw Error(ErrorCode::kInsufficientData,
                "comparing systems needs at least two reports");
  }
  std::vector<RankingRow> rows;
  for (const FidelityReport& r : reports) {
    RankingRow row;
    row.label = r.label;
    row.documents = r.per_document.size();
    row.mean = r.mean;
    row.stddev = r.stddev;
    rows.push_back(std::move(row));
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const RankingRow& a, const RankingRow& b) {
                     if (a.mean.fidelity != b.mean.fidelity) {
                       return a.mean.fidelity > b.mean.fidelity;
                     }
                     return a.label < b.label;
                   });
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].rank = static_cast<int>(i + 1);
  }
  return rows;
}

}  // namespace fidaudit
