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
#include <numeric>
#include <random>

#include "baseline/document.hpp"
#include "baseline/embeddings.hpp"
#include "baseline/transport.hpp"
#include "baseline/wmd.hpp"
#include "common/error.hpp"
#include "common/text.hpp"
#include "oracles/transport_oracle.hpp"
#include "support/test_util.hpp"

namespace fidaudit {
namespace {

double Dist(std::span<const double> a, std::span<const double> b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

std::vector<double> CostMatrix(const NBow& p, const NBow& q,
                               const EmbeddingTable& table) {
  std::vector<double> cost;
  for (const auto& a : p.tokens) {
    for (const auto& b : q.tokens) {
      cost.push_back(Dist(table.Find(a), table.Find(b)));
    }
  }
  return cost;
}

// Table of `n` tokens "t0".."t<n-1>" with random `dim`-dimensional vectors.
EmbeddingTable RandomTable(std::mt19937_64& rng, std::size_t n,
                           std::size_t dim) {
  std::normal_distribution<double> g(0, 1);
  EmbeddingTable table("random", dim);
  std::vector<double> v(dim);
  for (std::size_t i = 0; i < n; ++i) {
    for (double& x : v) x = g(rng);
    table.Set("t" + std::to_string(i), v);
  }
  return table;
}

NBow RandomBow(std::mt19937_64& rng, std::size_t vocab, std::size_t max_tokens) {
  std::vector<std::string> tokens;
  const std::size_t n = 1 + rng() % max_tokens;
  for (std::size_t i = 0; i < n; ++i) {
    tokens.push_back("t" + std::to_string(rng() % vocab));
  }
  NBow bow;
  for (const auto& t : tokens) {
    if (std::find(bow.tokens.begin(), bow.tokens.end(), t) == bow.tokens.end()) {
      bow.tokens.push_back(t);
    }
  }
  // Random positive weights rather than counts, to exercise irregular masses.
  std::uniform_real_distribution<double> u(0.05, 1.0);
  for (std::size_t i = 0; i < bow.tokens.size(); ++i) bow.weights.push_back(u(rng));
  const double sum = std::accumulate(bow.weights.begin(), bow.weights.end(), 0.0);
  for (double& w : bow.weights) w /= sum;
  return bow;
}

TEST(EmbeddingsTest, ParsesAndValidates) {
  const EmbeddingTable t = ParseEmbeddings("a 1 0\nb 0 1\nc 0.5 -2\n", "toy");
  EXPECT_EQ(t.dim(), 2u);
  EXPECT_EQ(t.size(), 3u);
  EXPECT_EQ(t.name(), "toy");
  EXPECT_DOUBLE_EQ(t.Find("c")[1], -2.0);
  EXPECT_TRUE(t.Find("zzz").empty());

  std::string short_line;
  for (int i = 0; i < 50; ++i) short_line += " 0.1";
  EXPECT_FA_ERROR(ParseEmbeddings("x" + short_line + "\ny" +
                                      short_line.substr(4) + "\n",
                                  "w"),
                  kDimensionMismatch);
  EXPECT_FA_ERROR(ParseEmbeddings("a 1 0\n", "w", 3), kDimensionMismatch);
  EXPECT_FA_ERROR(ParseEmbeddings("a 1 zz\n", "w"), kParse);
  EXPECT_FA_ERROR(ParseEmbeddings("a 1 nan\n", "w"), kParse);
}

TEST(EmbeddingsTest, DuplicateLastWins) {
  const EmbeddingTable t = ParseEmbeddings("a 1 0\na 3 4\n", "dup");
  EXPECT_EQ(t.size(), 1u);
  EXPECT_DOUBLE_EQ(t.Find("a")[0], 3.0);
  ASSERT_EQ(t.warnings().size(), 1u);
  EXPECT_NE(t.warnings()[0].find("line 2"), std::string::npos);
}

TEST(EmbeddingsTest, DeskFixtureLoads) {
  const EmbeddingTable t = LoadEmbeddings(
      testutil::FixtureDir() / "desk" / "toy_embeddings.txt", 2);
  EXPECT_EQ(t.dim(), 2u);
  EXPECT_GT(t.size(), 100u);
  EXPECT_FALSE(t.Contains("woodworking"));
}

TEST(TokenizeTest, Rules) {
  EXPECT_EQ(Tokenize("Loan of €5,000!"),
            (std::vector<std::string>{"loan", "of", "5", "000"}));
  EXPECT_TRUE(Tokenize("").empty());
  EXPECT_EQ(Tokenize("AAA aaa"), (std::vector<std::string>{"aaa", "aaa"}));
  EXPECT_EQ(Tokenize("Größe, Café"),
            (std::vector<std::string>{"größe", "café"}));
}

TEST(SerializeTest, SchemaOrderWithUnits) {
  const FeatureSchema& schema = *testutil::GcdSchema();
  const auto reps = LoadRepresentations(
      testutil::FixtureDir() / "desk" / "german_sample.data", schema);
  const std::string text = SerializeRepresentation(reps[0], schema);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 19);
  EXPECT_EQ(text.rfind(schema.features()[0].display_name + ": ", 0), 0u);
  const FeatureDef* duration = schema.Find("duration");
  EXPECT_NE(text.find(duration->display_name + ": " +
                      reps[0].Find(schema, "duration")->decoded),
            std::string::npos);
  EXPECT_NE(reps[0].Find(schema, "duration")->decoded.find(" months"),
            std::string::npos);
  EXPECT_EQ(text, SerializeRepresentation(reps[0], schema));
}

TEST(PreprocessTest, RemovesSharedTypes) {
  EXPECT_EQ(RemoveSharedTokens({"loan", "for", "a", "car", "loan"},
                               {"car", "loan", "x"}),
            (std::vector<std::string>{"for", "a"}));
  EXPECT_EQ(RemoveSharedTokens({"a", "b"}, {}),
            (std::vector<std::string>{"a", "b"}));
  EXPECT_TRUE(RemoveSharedTokens({"a", "b"}, {"b", "a"}).empty());
}

TEST(NBowTest, Weights) {
  const EmbeddingTable t = ParseEmbeddings("a 1 0\nb 0 1\n", "toy");
  const NBow bow = MakeNBow({"a", "oov", "a", "b"}, t);
  EXPECT_EQ(bow.tokens, (std::vector<std::string>{"a", "b"}));
  EXPECT_DOUBLE_EQ(bow.weights[0], 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(bow.weights[1], 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(MakeNBow({"b"}, t).weights[0], 1.0);
  EXPECT_FA_ERROR(MakeNBow({"x", "y"}, t), kEmptyAfterOov);
  EXPECT_FA_ERROR(MakeNBow({}, t), kEmptyAfterOov);
}

TEST(TransportTest, MatchesVertexEnumeration) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t m = 1 + rng() % 4;
    const std::size_t n = 1 + rng() % 4;
    std::vector<double> supply(m), demand(n), cost(m * n);
    for (double& s : supply) s = u(rng);
    for (double& d : demand) d = u(rng);
    const double ss = std::accumulate(supply.begin(), supply.end(), 0.0);
    const double ds = std::accumulate(demand.begin(), demand.end(), 0.0);
    for (double& s : supply) s /= ss;
    for (double& d : demand) d /= ds;
    for (double& c : cost) c = u(rng) * 3;
    const TransportSolution sol = SolveTransport(supply, demand, cost);
    EXPECT_NEAR(sol.cost,
                oracle::TransportByVertexEnumeration(supply, demand, cost), 1e-9)
        << "trial " << trial;
    // The plan is feasible and prices out to the reported cost.
    std::vector<double> rows(m, 0), cols(n, 0);
    double priced = 0;
    for (const TransportFlow& f : sol.plan) {
      EXPECT_GE(f.amount, -1e-12);
      rows[f.row] += f.amount;
      cols[f.col] += f.amount;
      priced += f.amount * cost[f.row * n + f.col];
    }
    for (std::size_t i = 0; i < m; ++i) EXPECT_NEAR(rows[i], supply[i], 1e-9);
    for (std::size_t j = 0; j < n; ++j) EXPECT_NEAR(cols[j], demand[j], 1e-9);
    EXPECT_NEAR(priced, sol.cost, 1e-9);
  }
}

TEST(TransportTest, RejectsBadInput) {
  const std::vector<double> one = {1.0};
  const std::vector<double> half = {0.5};
  EXPECT_FA_ERROR(SolveTransport(one, half, std::vector<double>{1.0}),
                  kSolverFailure);
  EXPECT_FA_ERROR(SolveTransport(one, one, std::vector<double>{1.0, 2.0}),
                  kSolverFailure);
}

TEST(WmdTest, HandExamples) {
  const EmbeddingTable t = ParseEmbeddings("a 0 0\nb 2 0\nc 0 3\n", "toy");
  const NBow ab = MakeNBow({"a", "b"}, t);
  const NBow c = MakeNBow({"c"}, t);
  EXPECT_DOUBLE_EQ(WordMoversDistance(ab, ab, t), 0.0);
  EXPECT_NEAR(WordMoversDistance(MakeNBow({"a"}, t), c, t), 3.0, 1e-12);
  EXPECT_NEAR(WordMoversDistance(ab, c, t), 0.5 * 3.0 + 0.5 * std::sqrt(13.0),
              1e-12);
  EXPECT_NEAR(WordMoversDistance(ab, c, t),
              oracle::TransportByVertexEnumeration({0.5, 0.5}, {1.0},
                                                   CostMatrix(ab, c, t)),
              1e-12);
}

TEST(WmdTest, MetricAndScaleProperties) {
  std::mt19937_64 rng(11);
  EmbeddingTable table = RandomTable(rng, 12, 3);
  EmbeddingTable scaled = table;
  scaled.Scale(2.5);
  for (int trial = 0; trial < 200; ++trial) {
    const NBow p = RandomBow(rng, 12, 6);
    const NBow q = RandomBow(rng, 12, 6);
    const NBow r = RandomBow(rng, 12, 6);
    const double pq = WordMoversDistance(p, q, table);
    const double qp = WordMoversDistance(q, p, table);
    const double pr = WordMoversDistance(p, r, table);
    const double rq = WordMoversDistance(r, q, table);
    EXPECT_GE(pq, 0.0);
    EXPECT_NEAR(pq, qp, 1e-9);
    EXPECT_NEAR(WordMoversDistance(p, p, table), 0.0, 1e-9);
    EXPECT_LE(pq, pr + rq + 1e-9);
    EXPECT_NEAR(WordMoversDistance(p, q, scaled), 2.5 * pq, 1e-9);
  }
}

TEST(WmdTest, DeskDistancesRecordPerPairErrors) {
  const Corpus corpus = testutil::DeskCorpus();
  const EmbeddingTable table = LoadEmbeddings(
      testutil::FixtureDir() / "desk" / "toy_embeddings.txt", 2);
  std::vector<std::string> ids = {"model-a_1_1", "model-b_5_2", "missing"};
  const DistanceSet plain =
      ComputeDistances(corpus, ids, table, WmdVariant::kPlain, {}, 2);
  EXPECT_EQ(plain.method, "toy_embeddings");
  ASSERT_EQ(plain.records.size(), 3u);
  EXPECT_TRUE(plain.records[0].distance.has_value());
  EXPECT_GT(*plain.records[0].distance, 0.0);
  EXPECT_EQ(plain.records[2].status, "NotFound");
  EXPECT_FALSE(plain.records[2].distance.has_value());

  const DistanceSet pre =
      ComputeDistances(corpus, ids, table, WmdVariant::kPreprocessed);
  EXPECT_EQ(pre.method, "toy_embeddings-preprocessed");

  // Same distances regardless of thread count.
  const DistanceSet serial =
      ComputeDistances(corpus, ids, table, WmdVariant::kPlain, {}, 1);
  EXPECT_EQ(*serial.records[1].distance, *plain.records[1].distance);

  const auto parsed = ParseDistancesCsv(DistancesToCsv(plain) +
                                        DistancesToCsv(pre).substr(
                                            DistancesToCsv(pre).find('\n') + 1));
  ASSERT_EQ(parsed.size(), 2u);
  EXPECT_EQ(parsed[0].records.size(), 3u);
  EXPECT_NEAR(*parsed[0].records[0].distance, *plain.records[0].distance, 1e-15);
  EXPECT_EQ(parsed[0].records[2].status, "NotFound");
  EXPECT_FA_ERROR(ParseWmdVariant("fancy"), kInvalidArgument);
}

TEST(WmdTest, IdenticalTextAndRepresentation) {
  const FeatureSchema& schema = *testutil::GcdSchema();
  auto reps = LoadRepresentations(
      testutil::FixtureDir() / "desk" / "german_sample.data", schema);
  const std::string text = SerializeRepresentation(reps[0], schema);
  SelfDescription d{"echo", reps[0].profile_id, "echo", 1, text,
                    CodePointLength(text)};
  const Corpus corpus(schema, reps, {d});
  EmbeddingTable table("all", 2);
  for (const std::string& tok : Tokenize(text)) {
    const double v[2] = {static_cast<double>(tok.size()), 1.0};
    table.Set(tok, v);
  }
  const std::vector<std::string> ids = {"echo"};
  const DistanceSet plain =
      ComputeDistances(corpus, ids, table, WmdVariant::kPlain);
  EXPECT_NEAR(*plain.records[0].distance, 0.0, 1e-12);
  const DistanceSet pre =
      ComputeDistances(corpus, ids, table, WmdVariant::kPreprocessed);
  EXPECT_EQ(pre.records[0].status, "EmptyAfterOov");
}

}  // namespace
}  // namespace fidaudit
