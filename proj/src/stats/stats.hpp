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

#ifndef FIDAUDIT_STATS_STATS_HPP_
#define FIDAUDIT_STATS_STATS_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "baseline/wmd.hpp"
#include "fidelity/fidelity.hpp"

namespace fidaudit {

// Product-moment correlation of two equally long series.
// Throws kLengthMismatch, kTooFewPoints (fewer than 2) or kZeroVariance.
double Pearson(std::span<const double> xs, std::span<const double> ys);

// Components correlated against distances, in column order (a)-(f).
struct CorrelationComponent {
  char letter;
  const char* name;
  double ComponentAverages::*field;
};
std::span<const CorrelationComponent> CorrelationComponents();

struct CorrelationCell {
  std::optional<double> r;
  std::size_t n = 0;     // documents with both a distance and counts
  std::string status = "ok";
};

struct CorrelationRow {
  std::string method;
  std::vector<CorrelationCell> cells;  // one per CorrelationComponents()
};

// One row per distance set. Document counts are the annotator averages of
// `report`; documents lacking a distance are dropped pairwise. A cell whose
// series has no variance records "ZeroVariance" and the row continues.
// Throws kInsufficientOverlap when a row shares fewer than two documents
// with the report.
std::vector<CorrelationRow> CorrelationTable(
    std::span<const DistanceSet> distances, const FidelityReport& report);

// Columns: method, then for each component "<letter>_<name>" r and n, then
// status columns.
std::string CorrelationTableToCsv(std::span<const CorrelationRow> rows);

}  // namespace fidaudit

#endif  // FIDAUDIT_STATS_STATS_HPP_
