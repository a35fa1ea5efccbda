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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "common/error.hpp"
#include "oracles/stats_oracle.hpp"
#include "stats/stats.hpp"
#include "support/test_util.hpp"

namespace fidaudit {
namespace {

TEST(PearsonTest, Examples) {
  const std::vector<double> x = {1, 2, 3};
  EXPECT_DOUBLE_EQ(Pearson(x, x), 1.0);
  EXPECT_DOUBLE_EQ(Pearson(x, std::vector<double>{-1, -2, -3}), -1.0);
  // Centered: dx = (-1, 0, 1), dy = (-7/3, -1/3, 8/3); r = 5 / sqrt(2 * 114/9).
  const double r = Pearson(x, std::vector<double>{2, 4, 7});
  EXPECT_NEAR(r, 5.0 / std::sqrt(2.0 * 114.0 / 9.0), 1e-15);
  EXPECT_NEAR(r, 0.9934, 5e-5);
}

TEST(PearsonTest, Errors) {
  EXPECT_FA_ERROR(Pearson(std::vector<double>{1, 2},
                          std::vector<double>{1, 2, 3}),
                  kLengthMismatch);
  EXPECT_FA_ERROR(Pearson(std::vector<double>{1}, std::vector<double>{1}),
                  kTooFewPoints);
  EXPECT_FA_ERROR(Pearson(std::vector<double>{1, 2, 3},
                          std::vector<double>{4, 4, 4}),
                  kZeroVariance);
}

TEST(PearsonTest, MatchesTwoPassAndIsAffineInvariant) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g(0, 1);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + rng() % 60;
    std::vector<double> x(n), y(n);
    const double rho = std::uniform_real_distribution<double>(-1, 1)(rng);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = g(rng) * 10 + 100;
      y[i] = rho * x[i] + g(rng);
    }
    const double r = Pearson(x, y);
    EXPECT_NEAR(r, oracle::TwoPassPearson(x, y), 1e-12);
    EXPECT_LE(std::abs(r), 1.0);
    std::vector<double> ax(n), by(n);
    for (std::size_t i = 0; i < n; ++i) {
      ax[i] = 3.5 * x[i] - 20;
      by[i] = -0.25 * y[i] + 7;
    }
    EXPECT_NEAR(Pearson(ax, y), r, 1e-10);
    EXPECT_NEAR(Pearson(x, by), -r, 1e-10);
    EXPECT_NEAR(Pearson(y, x), r, 1e-12);
  }
}

FidelityReport ReportFor(const std::vector<ComponentCounts>& counts) {
  std::map<AnnotationKey, ComponentCounts> m;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    m[{"d" + std::to_string(i), "a"}] = counts[i];
  }
  return Aggregate(m, "r");
}

DistanceSet DistancesFor(const std::vector<std::optional<double>>& d,
                         std::string method = "m") {
  DistanceSet set{std::move(method), {}};
  for (std::size_t i = 0; i < d.size(); ++i) {
    DistanceRecord rec;
    rec.doc_id = "d" + std::to_string(i);
    rec.distance = d[i];
    if (!d[i]) rec.status = "EmptyAfterOov";
    set.records.push_back(rec);
  }
  return set;
}

TEST(CorrelationTableTest, ColumnsAndIdentity) {
  ASSERT_EQ(CorrelationComponents().size(), 6u);
  EXPECT_EQ(CorrelationComponents()[4].letter, 'e');
  std::mt19937_64 rng(8);
  std::vector<ComponentCounts> counts;
  std::vector<std::optional<double>> dist;
  for (int i = 0; i < 12; ++i) {
    counts.push_back(ComponentCounts::Make(
        static_cast<std::int64_t>(rng() % 4), static_cast<std::int64_t>(rng() % 9),
        static_cast<std::int64_t>(rng() % 6), static_cast<std::int64_t>(rng() % 3),
        static_cast<std::int64_t>(1 + rng() % 10), 20));
    dist.push_back(1.0 + static_cast<double>(rng() % 1000) / 100.0);
  }
  dist[3].reset();
  const std::vector<DistanceSet> sets = {DistancesFor(dist)};
  const auto rows = CorrelationTable(sets, ReportFor(counts));
  ASSERT_EQ(rows.size(), 1u);
  ASSERT_EQ(rows[0].cells.size(), 6u);
  std::vector<double> d, e, fid;
  for (int i = 0; i < 12; ++i) {
    if (!dist[i]) continue;
    d.push_back(*dist[i]);
    e.push_back(static_cast<double>(counts[i].additional_schema +
                                    counts[i].new_subjects + counts[i].aspects));
    fid.push_back(static_cast<double>(counts[i].fidelity));
  }
  EXPECT_EQ(rows[0].cells[4].n, 11u);
  EXPECT_NEAR(*rows[0].cells[4].r, oracle::TwoPassPearson(d, e), 1e-12);
  EXPECT_NEAR(*rows[0].cells[0].r, oracle::TwoPassPearson(d, fid), 1e-12);
}

TEST(CorrelationTableTest, ZeroVarianceCellDoesNotStopRow) {
  std::vector<ComponentCounts> counts;
  for (std::int64_t i = 0; i < 5; ++i) {
    counts.push_back(ComponentCounts::Make(i, 2 * i, i % 2, 0, 3, 20));
  }
  const std::vector<DistanceSet> sets = {DistancesFor({1.0, 2.0, 2.5, 4.0, 3.0})};
  const auto rows = CorrelationTable(sets, ReportFor(counts));
  const auto& cells = rows[0].cells;
  EXPECT_EQ(cells[5].status, "ZeroVariance");
  EXPECT_FALSE(cells[5].r.has_value());
  EXPECT_TRUE(cells[0].r.has_value());
  const std::string csv = CorrelationTableToCsv(rows);
  EXPECT_EQ(csv.rfind("method,n,a_fidelity,", 0), 0u) << csv;
  EXPECT_NE(csv.find("ZeroVariance"), std::string::npos);
}

TEST(CorrelationTableTest, InsufficientOverlap) {
  const std::vector<ComponentCounts> counts = {
      ComponentCounts::Make(1, 2, 3, 0, 3, 20),
      ComponentCounts::Make(2, 2, 3, 0, 3, 20)};
  const std::vector<DistanceSet> sets = {DistancesFor({1.0, std::nullopt})};
  EXPECT_FA_ERROR(CorrelationTable(sets, ReportFor(counts)),
                  kInsufficientOverlap);
}

}  // namespace
}  // namespace fidaudit
