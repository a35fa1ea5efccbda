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

#ifndef FIDAUDIT_AGREEMENT_AGREEMENT_HPP_
#define FIDAUDIT_AGREEMENT_AGREEMENT_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "annotation/annotation.hpp"

namespace fidaudit {

enum class MatchMode { kStrict, kRelaxed };

const char* MatchModeName(MatchMode mode);

struct MatchPair {
  std::size_t a_span = 0;
  std::size_t b_span = 0;
  Label label;
};

// Span-label agreement between two annotators. Precision is taken against
// A's assignments and recall against B's.
struct MatchResult {
  MatchMode mode = MatchMode::kStrict;
  std::vector<MatchPair> pairs;
  std::int64_t tp = 0;
  std::int64_t a_total = 0;
  std::int64_t b_total = 0;
  double precision = 0;
  double recall = 0;
  double f1 = 0;
};

// Fills precision/recall/f1 from the tallies. Two empty sides agree
// perfectly (1.0); one empty side scores 0.
void ComputeScores(MatchResult& result);

// Exact offsets: a true positive is a shared (start, end, label) assignment,
// matched as a multiset intersection. Throws kDocMismatch.
MatchResult MatchStrict(const AnnotationDoc& a, const AnnotationDoc& b);

// Overlapping offsets: per label, a one-to-one matching between A's and B's
// assignments whose spans share at least one code point. Pairs are taken
// greedily by descending overlap length, ties by earlier A start, then
// earlier B start, then span index. Throws kDocMismatch.
MatchResult MatchRelaxed(const AnnotationDoc& a, const AnnotationDoc& b);

MatchResult Match(const AnnotationDoc& a, const AnnotationDoc& b, MatchMode mode);

// Sums tp, a_total and b_total over documents before scoring.
// Throws kEmptyInput or kMixedModes.
MatchResult MicroAverage(std::span<const MatchResult> results);

struct DocumentAgreement {
  std::string doc_id;
  MatchResult result;
};

// Agreement of two annotators over every document both have annotated.
struct AgreementTable {
  MatchMode mode = MatchMode::kStrict;
  std::vector<DocumentAgreement> documents;  // sorted by doc_id
  MatchResult micro;
  std::vector<std::string> unpaired;  // annotated by only one of the two
};

// Throws kEmptyInput when the annotators share no document.
AgreementTable CompareAnnotators(std::span<const AnnotationDoc> docs,
                                 std::string_view annotator_a,
                                 std::string_view annotator_b, MatchMode mode);

// Columns: mode, scope (document|micro), doc_id, tp, a_total, b_total,
// precision, recall, f1.
std::string AgreementToCsv(std::span<const AgreementTable> tables);

}  // namespace fidaudit

#endif  // FIDAUDIT_AGREEMENT_AGREEMENT_HPP_
