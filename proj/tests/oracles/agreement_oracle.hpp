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

// Reference matchers: strict agreement by sorting assignment tuples, and the
// maximum one-to-one overlap matching (augmenting paths) per label.

#ifndef FIDAUDIT_TESTS_ORACLES_AGREEMENT_ORACLE_HPP_
#define FIDAUDIT_TESTS_ORACLES_AGREEMENT_ORACLE_HPP_

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <tuple>
#include <vector>

#include "annotation/annotation.hpp"

namespace oracle {

// (label kind, label name, start, end) of every distinct span label.
using Assignment = std::tuple<int, std::string, std::int64_t, std::int64_t>;

inline std::vector<Assignment> Assignments(const fidaudit::AnnotationDoc& doc) {
  std::vector<Assignment> out;
  for (const auto& span : doc.spans) {
    std::vector<Assignment> local;
    for (const auto& l : span.labels) {
      Assignment a{static_cast<int>(l.kind), l.name, span.start, span.end};
      if (std::find(local.begin(), local.end(), a) == local.end()) {
        local.push_back(a);
      }
    }
    out.insert(out.end(), local.begin(), local.end());
  }
  return out;
}

inline std::int64_t StrictTp(const fidaudit::AnnotationDoc& a,
                             const fidaudit::AnnotationDoc& b) {
  auto xa = Assignments(a);
  auto xb = Assignments(b);
  std::sort(xa.begin(), xa.end());
  std::sort(xb.begin(), xb.end());
  std::vector<Assignment> common;
  std::set_intersection(xa.begin(), xa.end(), xb.begin(), xb.end(),
                        std::back_inserter(common));
  return static_cast<std::int64_t>(common.size());
}

inline std::int64_t MaxRelaxedTp(const fidaudit::AnnotationDoc& a,
                                 const fidaudit::AnnotationDoc& b) {
  const auto xa = Assignments(a);
  const auto xb = Assignments(b);
  std::vector<std::vector<std::size_t>> adj(xa.size());
  for (std::size_t i = 0; i < xa.size(); ++i) {
    for (std::size_t j = 0; j < xb.size(); ++j) {
      const bool same_label = std::get<0>(xa[i]) == std::get<0>(xb[j]) &&
                              std::get<1>(xa[i]) == std::get<1>(xb[j]);
      const auto lo = std::max(std::get<2>(xa[i]), std::get<2>(xb[j]));
      const auto hi = std::min(std::get<3>(xa[i]), std::get<3>(xb[j]));
      if (same_label && hi - lo >= 1) adj[i].push_back(j);
    }
  }
  std::vector<int> owner(xb.size(), -1);
  std::function<bool(std::size_t, std::vector<bool>&)> augment =
      [&](std::size_t i, std::vector<bool>& seen) {
        for (std::size_t j : adj[i]) {
          if (seen[j]) continue;
          seen[j] = true;
          if (owner[j] < 0 ||
              augment(static_cast<std::size_t>(owner[j]), seen)) {
            owner[j] = static_cast<int>(i);
            return true;
          }
        }
        return false;
      };
  std::int64_t tp = 0;
  for (std::size_t i = 0; i < xa.size(); ++i) {
    std::vector<bool> seen(xb.size(), false);
    if (augment(i, seen)) ++tp;
  }
  return tp;
}

// F1 from raw tallies, written out from the definitions.
inline double F1(std::int64_t tp, std::int64_t a_total, std::int64_t b_total) {
  if (a_total == 0 && b_total == 0) return 1.0;
  if (a_total == 0 || b_total == 0 || tp == 0) return 0.0;
  const double p = static_cast<double>(tp) / static_cast<double>(a_total);
  const double r = static_cast<double>(tp) / static_cast<double>(b_total);
  return 2 * p * r / (p + r);
}

}  // namespace oracle

#endif  // FIDAUDIT_TESTS_ORACLES_AGREEMENT_ORACLE_HPP_
