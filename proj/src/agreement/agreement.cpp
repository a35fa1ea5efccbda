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

#include "agreement/agreement.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "common/error.hpp"
#include "common/text.hpp"

namespace fidaudit {
namespace {

struct Assignment {
  std::size_t span = 0;
  std::int64_t start = 0;
  std::int64_t end = 0;
};

// Distinct labels of each span, grouped by label.
std::map<Label, std::vector<Assignment>> GroupByLabel(const AnnotationDoc& doc,
                                                      std::int64_t& total) {
  std::map<Label, std::vector<Assignment>> groups;
  total = 0;
  for (std::size_t i = 0; i < doc.spans.size(); ++i) {
    const Span& s = doc.spans[i];
    std::set<Label> seen;
    for (const Label& l : s.labels) {
      if (!seen.insert(l).second) continue;
      groups[l].push_back({i, s.start, s.end});
      ++total;
    }
  }
  return groups;
}

void CheckSameDoc(const AnnotationDoc& a, const AnnotationDoc& b) {
  if (a.doc_id != b.doc_id) {
    throw Error(ErrorCode::kDocMismatch, "cannot compare annotations of \"" +
                                             a.doc_id + "\" and \"" + b.doc_id +
                                             "\"");
  }
}

}  // namespace

const char* MatchModeName(MatchMode mode) {
  return mode == MatchMode::kStrict ? "strict" : "relaxed";
}

void ComputeScores(MatchResult& r) {
  if (r.a_total == 0 && r.b_total == 0) {
    r.precision = r.recall = r.f1 = 1.0;
    return;
  }
  r.precision = r.a_total > 0 ? static_cast<double>(r.tp) / r.a_total : 0.0;
  r.recall = r.b_total > 0 ? static_cast<double>(r.tp) / r.b_total : 0.0;
  r.f1 = r.precision + r.recall > 0
             ? 2 * r.precision * r.recall / (r.precision + r.recall)
             : 0.0;
}

MatchResult MatchStrict(const AnnotationDoc& a, const AnnotationDoc& b) {
  CheckSameDoc(a, b);
  MatchResult result;
  result.mode = MatchMode::kStrict;
  const auto groups_a = GroupByLabel(a, result.a_total);
  const auto groups_b = GroupByLabel(b, result.b_total);
  for (const auto& [label, list_a] : groups_a) {
    const auto it = groups_b.find(label);
    if (it == groups_b.end()) continue;
    // Pair equal offsets in span order.
    std::map<std::pair<std::int64_t, std::int64_t>, std::vector<std::size_t>>
        pending_b;
    for (const Assignment& x : it->second) {
      pending_b[{x.start, x.end}].push_back(x.span);
    }
    std::map<std::pair<std::int64_t, std::int64_t>, std::size_t> used;
    for (const Assignment& x : list_a) {
      const auto match = pending_b.find({x.start, x.end});
      if (match == pending_b.end()) continue;
      std::size_t& next = used[{x.start, x.end}];
      if (next >= match->second.size()) continue;
      result.pairs.push_back({x.span, match->second[next++], label});
    }
  }
  result.tp = static_cast<std::int64_t>(result.pairs.size());
  ComputeScores(result);
  return result;
}

MatchResult MatchRelaxed(const AnnotationDoc& a, const AnnotationDoc& b) {
  CheckSameDoc(a, b);
  MatchResult result;
  result.mode = MatchMode::kRelaxed;
  const auto groups_a = GroupByLabel(a, result.a_total);
  const auto groups_b = GroupByLabel(b, result.b_total);
  for (const auto& [label, list_a] : groups_a) {
    const auto it = groups_b.find(label);
    if (it == groups_b.end()) continue;
    const auto& list_b = it->second;
    struct Candidate {
      std::int64_t overlap;
      std::size_t ia;
      std::size_t ib;
    };
    std::vector<Candidate> candidates;
    for (std::size_t ia = 0; ia < list_a.size(); ++ia) {
      for (std::size_t ib = 0; ib < list_b.size(); ++ib) {
        const std::int64_t overlap =
            std::min(list_a[ia].end, list_b[ib].end) -
            std::max(list_a[ia].start, list_b[ib].start);
        if (overlap >= 1) candidates.push_back({overlap, ia, ib});
      }
    }
    std::sort(candidates.begin(), candidates.end(),
              [&](const Candidate& x, const Candidate& y) {
                return std::make_tuple(-x.overlap, list_a[x.ia].start,
                                       list_b[x.ib].start, list_a[x.ia].span,
                                       list_b[x.ib].span) <
                       std::make_tuple(-y.overlap, list_a[y.ia].start,
                                       list_b[y.ib].start, list_a[y.ia].span,
                                       list_b[y.ib].span);
              });
    std::vector<bool> used_a(list_a.size(), false);
    std::vector<bool> used_b(list_b.size(), false);
    for (const Candidate& c : candidates) {
      if (used_a[c.ia] || used_b[c.ib]) continue;
      used_a[c.ia] = used_b[c.ib] = true;
      result.pairs.push_back({list_a[c.ia].span, list_b[c.ib].span, label});
    }
  }
  result.tp = static_cast<std::int64_t>(result.pairs.size());
  ComputeScores(result);
  return result;
}

MatchResult Match(const AnnotationDoc& a, const AnnotationDoc& b,
                  MatchMode mode) {
  return mode == MatchMode::kStrict ? MatchStrict(a, b) : MatchRelaxed(a, b);
}

MatchResult MicroAverage(std::span<const MatchResult> results) {
  if (results.empty()) {
    throw Error(ErrorCode::kEmptyInput, "no match results to average");
  }
  MatchResult total;
  total.mode = results.front().mode;
  for (const MatchResult& r : results) {
    if (r.mode != total.mode) {
      throw Error(ErrorCode::kMixedModes,
                  "cannot average strict and relaxed results together");
    }
    total.tp += r.tp;
    total.a_total += r.a_total;
    total.b_total += r.b_total;
  }
  ComputeScores(total);
  return total;
}

AgreementTable CompareAnnotators(std::span<const AnnotationDoc> docs,
                                 std::string_view annotator_a,
                                 std::string_view annotator_b, MatchMode mode) {
  std::map<std::string, const AnnotationDoc*> by_a;
  std::map<std::string, const AnnotationDoc*> by_b;
  for (const AnnotationDoc& d : docs) {
    if (d.annotator_id == annotator_a) by_a[d.doc_id] = &d;
    if (d.annotator_id == annotator_b) by_b[d.doc_id] = &d;
  }
  AgreementTable table;
  table.mode = mode;
  std::vector<MatchResult> results;
  for (const auto& [doc_id, a] : by_a) {
    const auto it = by_b.find(doc_id);
    if (it == by_b.end()) {
      table.unpaired.push_back(doc_id);
      continue;
    }
    results.push_back(Match(*a, *it->second, mode));
    table.documents.push_back({doc_id, results.back()});
  }
  for (const auto& [doc_id, b] : by_b) {
    if (!by_a.contains(doc_id)) table.unpaired.push_back(doc_id);
  }
  std::sort(table.unpaired.begin(), table.unpaired.end());
  if (results.empty()) {
    throw Error(ErrorCode::kEmptyInput,
                "annotators \"" + std::string(annotator_a) + "\" and \"" +
                    std::string(annotator_b) + "\" share no document");
  }
  table.micro = MicroAverage(results);
  return table;
}

std::string AgreementToCsv(std::span<const AgreementTable> tables) {
  std::string out = "mode,scope,doc_id,tp,a_total,b_total,precision,recall,f1\n";
  auto row = [&out](MatchMode mode, const char* scope, std::string_view doc_id,
                    const MatchResult& r) {
    out += std::string(MatchModeName(mode)) + "," + scope + "," +
           CsvField(doc_id) + "," + std::to_string(r.tp) + "," +
           std::to_string(r.a_total) + "," + std::to_string(r.b_total) + "," +
           FormatDouble(r.precision) + "," + FormatDouble(r.recall) + "," +
           FormatDouble(r.f1) + "\n";
  };
  for (const AgreementTable& t : tables) {
    for (const DocumentAgreement& d : t.documents) {
      row(t.mode, "document", d.doc_id, d.result);
    }
    row(t.mode, "micro", "", t.micro);
  }
  return out;
}

}  // namespace fidaudit
