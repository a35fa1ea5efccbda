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

#include "stats/stats.hpp"

#include <cmath>
#include <map>

#include "common/error.hpp"
#include "common/text.hpp"

namespace fidaudit {

double Pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "series lengths differ (" + std::to_string(xs.size()) +
                    " vs " + std::to_string(ys.size()) + ")");
  }
  if (xs.size() < 2) {
    throw Error(ErrorCode::kTooFewPoints, "need at least 2 points");
  }
  // Welford-style running moments over values shifted by the first point,
  // which keeps a large common offset from eating the precision of the
  // spread.
  const double x0 = xs[0], y0 = ys[0];
  double mean_x = 0, mean_y = 0, m2x = 0, m2y = 0, cxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double n = static_cast<double>(i + 1);
    const double x = xs[i] - x0;
    const double y = ys[i] - y0;
    const double dx = x - mean_x;
    const double dy = y - mean_y;
    mean_x += dx / n;
    mean_y += dy / n;
    m2x += dx * (x - mean_x);
    m2y += dy * (y - mean_y);
    cxy += dx * (y - mean_y);
  }
  if (!(m2x > 0) || !(m2y > 0)) {
    throw Error(ErrorCode::kZeroVariance, "series has zero variance");
  }
  const double r = cxy / std::sqrt(m2x * m2y);
  return std::clamp(r, -1.0, 1.0);
}

std::span<const CorrelationComponent> CorrelationComponents() {
  static constexpr CorrelationComponent kComponents[] = {
      {'a', "fidelity", &ComponentAverages::fidelity},
      {'b', "additional_schema", &ComponentAverages::additional_schema},
      {'c', "new_subjects", &ComponentAverages::new_subjects},
      {'d', "aspects", &ComponentAverages::aspects},
      {'e', "additional_aspects", &ComponentAverages::additional_aspects},
      {'f', "specializations", &ComponentAverages::specializations},
  };
  return kComponents;
}

std::vector<CorrelationRow> CorrelationTable(
    std::span<const DistanceSet> distances, const FidelityReport& report) {
  std::map<std::string, const ComponentAverages*> counts;
  for (const DocumentSummary& doc : report.per_document) {
    counts.emplace(doc.doc_id, &doc.averages);
  }
  std::vector<CorrelationRow> rows;
  for (const DistanceSet& set : distances) {
    std::vector<double> xs;
    std::vector<const ComponentAverages*> matched;
    for (const DistanceRecord& record : set.records) {
      if (!record.distance) continue;
      const auto it = counts.find(record.doc_id);
      if (it == counts.end()) continue;
      xs.push_back(*record.distance);
      matched.push_back(it->second);
    }
    if (xs.size() < 2) {
      throw Error(ErrorCode::kInsufficientOverlap,
                  "method \"" + set.method + "\" shares " +
                      std::to_string(xs.size()) +
                      " document(s) with the fidelity report; need 2");
    }
    CorrelationRow row{set.method, {}};
    for (const CorrelationComponent& component : CorrelationComponents()) {
      std::vector<double> ys;
      ys.reserve(matched.size());
      for (const ComponentAverages* avg : matched) {
        ys.push_back(avg->*component.field);
      }
      CorrelationCell cell;
      cell.n = xs.size();
      try {
        cell.r = Pearson(xs, ys);
      } catch (const Error& e) {
        cell.status = ErrorCodeName(e.code());
      }
      row.cells.push_back(std::move(cell));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string CorrelationTableToCsv(std::span<const CorrelationRow> rows) {
  const auto components = CorrelationComponents();
  std::string out = "method,n";
  for (const CorrelationComponent& c : components) {
    out += std::string(",") + c.letter + "_" + c.name;
  }
  for (const CorrelationComponent& c : components) {
    out += std::string(",") + c.letter + "_status";
  }
  out += "\n";
  for (const CorrelationRow& row : rows) {
    out += CsvField(row.method) + ",";
    out += row.cells.empty() ? "0" : std::to_string(row.cells.front().n);
    for (const CorrelationCell& cell : row.cells) {
      out += "," + (cell.r ? FormatDouble(*cell.r) : std::string());
    }
    for (const CorrelationCell& cell : row.cells) {
      out += "," + cell.status;
    }
    out += "\n";
  }
  return out;
}

}  // namespace fidaudit
