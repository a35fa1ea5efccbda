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

#include <fstream>

#include "common/error.hpp"
#include "common/io.hpp"
#include "genclient/genclient.hpp"
#include "support/test_util.hpp"

namespace fidaudit {
namespace {

using testutil::GcdSchema;

std::vector<InputRepresentation> DeskReps() {
  return LoadRepresentations(
      testutil::FixtureDir() / "desk" / "german_sample.data", *GcdSchema());
}

std::size_t CountLinesStartingWith(const std::string& text,
                                   const std::string& prefix) {
  std::size_t n = 0, pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    if (text.compare(pos, prefix.size(), prefix) == 0) ++n;
    pos = end + 1;
  }
  return n;
}

TEST(PromptTest, ValueBasedListsEveryDecodedFeature) {
  const FeatureSchema& schema = *GcdSchema();
  const auto reps = DeskReps();
  const std::string prompt = BuildPrompt(&reps[0], schema, PromptMode::kValueBased);
  EXPECT_EQ(CountLinesStartingWith(prompt, "- "), 20u);
  for (std::size_t i = 0; i < schema.size(); ++i) {
    EXPECT_NE(prompt.find("- " + schema.features()[i].display_name + ": " +
                          reps[0].values[i].decoded + "\n"),
              std::string::npos)
        << schema.features()[i].key;
  }
  EXPECT_EQ(prompt, BuildPrompt(&reps[0], schema, PromptMode::kValueBased));
  EXPECT_NE(prompt, BuildPrompt(&reps[1], schema, PromptMode::kValueBased));
  EXPECT_FA_ERROR(BuildPrompt(nullptr, schema, PromptMode::kValueBased),
                  kMissingRepresentation);
}

TEST(PromptTest, FreeModeHasNamesButNoValues) {
  const FeatureSchema& schema = *GcdSchema();
  const std::string prompt = BuildPrompt(nullptr, schema, PromptMode::kFree);
  EXPECT_EQ(CountLinesStartingWith(prompt, "- "), 20u);
  for (const FeatureDef& f : schema.features()) {
    EXPECT_NE(prompt.find("- " + f.display_name + "\n"), std::string::npos);
    // No feature line carries a value.
    EXPECT_EQ(prompt.find("- " + f.display_name + ":"), std::string::npos);
    for (const auto& [code, text] : f.value_map) {
      EXPECT_EQ(prompt.find("- " + f.display_name + ": " + text),
                std::string::npos);
    }
  }
  const auto reps = DeskReps();
  EXPECT_EQ(prompt, BuildPrompt(&reps[0], schema, PromptMode::kFree));
}

TEST(PromptTest, PersonaSlot) {
  const auto reps = DeskReps();
  const std::string p = BuildPrompt(&reps[0], *GcdSchema(),
                                    PromptMode::kValueBased,
                                    {"a retired carpenter"});
  EXPECT_NE(p.find("a retired carpenter"), std::string::npos);
}

TEST(JobsTest, MakeJobsAndDocIds) {
  const auto reps = DeskReps();
  const std::vector<std::string> models = {"model-a", "vendor/o3-mini"};
  const auto jobs = MakeJobs(*GcdSchema(), reps, models, PromptMode::kValueBased,
                             2);
  ASSERT_EQ(jobs.size(), reps.size() * 2);
  EXPECT_EQ(jobs[0].DocId(1), "model-a_" + reps[0].profile_id + "_1");
  for (const auto& job : jobs) {
    job.Validate();
    if (job.generator_id == "vendor/o3-mini") {
      EXPECT_FALSE(job.params.temperature.has_value());
      EXPECT_FALSE(job.params.top_p.has_value());
    } else {
      EXPECT_EQ(job.params.temperature, 0.6);
      EXPECT_EQ(job.params.top_p, 0.9);
    }
  }
  EXPECT_FALSE(AcceptsSamplingParams("o1"));
  EXPECT_TRUE(AcceptsSamplingParams("gpt-4o"));
  EXPECT_TRUE(AcceptsSamplingParams("ollama"));

  const auto free_jobs = MakeJobs(*GcdSchema(), {}, models, PromptMode::kFree, 3);
  ASSERT_EQ(free_jobs.size(), 2u);
  EXPECT_TRUE(free_jobs[0].is_free());
  EXPECT_EQ(free_jobs[0].DocId(3), "model-a_free_3");

  GenerationJob bad = jobs[0];
  bad.n_variants = 0;
  EXPECT_FA_ERROR(bad.Validate(), kValidation);
}

TEST(BackoffTest, DoublesUpToCap) {
  using std::chrono::milliseconds;
  EXPECT_EQ(BackoffDelay(1, milliseconds(100), milliseconds(1000)),
            milliseconds(100));
  EXPECT_EQ(BackoffDelay(3, milliseconds(100), milliseconds(1000)),
            milliseconds(400));
  EXPECT_EQ(BackoffDelay(30, milliseconds(100), milliseconds(1000)),
            milliseconds(1000));
}

RunOptions NoSleep() {
  RunOptions o;
  o.sleep = [](std::chrono::milliseconds) {};
  return o;
}

GenerationJob OneJob(int variants) {
  return {"1", "model-a", "prompt", {}, variants};
}

TEST(RunJobsTest, FiveVariants) {
  MockChatClient client([](const ChatRequest& r) { return "letter for " + r.model; });
  const std::vector<GenerationJob> jobs = {OneJob(5)};
  const RunResult result = RunJobs(jobs, client, NoSleep());
  ASSERT_EQ(result.descriptions.size(), 5u);
  for (int v = 1; v <= 5; ++v) {
    const SelfDescription& d = result.descriptions[v - 1];
    EXPECT_EQ(d.variant_index, v);
    EXPECT_EQ(d.generator_id, "model-a");
    EXPECT_EQ(d.profile_id, "1");
    EXPECT_EQ(d.doc_id, "model-a_1_" + std::to_string(v));
  }
  EXPECT_EQ(client.calls(), 5u);
  EXPECT_EQ(client.requests()[0].temperature, 0.6);
}

TEST(RunJobsTest, RetriesTransientFailures) {
  MockChatClient client([](const ChatRequest&) { return "text"; });
  client.EnqueueFailures(2);
  std::vector<std::chrono::milliseconds> sleeps;
  RunOptions options = NoSleep();
  options.sleep = [&](std::chrono::milliseconds d) { sleeps.push_back(d); };
  options.base_delay = std::chrono::milliseconds(10);
  const std::vector<GenerationJob> jobs = {OneJob(1)};
  const RunResult result = RunJobs(jobs, client, options);
  EXPECT_EQ(result.descriptions.size(), 1u);
  ASSERT_EQ(result.attempts.size(), 3u);
  EXPECT_FALSE(result.attempts[0].ok);
  EXPECT_FALSE(result.attempts[1].ok);
  EXPECT_TRUE(result.attempts[2].ok);
  EXPECT_EQ(result.attempts[2].attempt, 3);
  EXPECT_EQ(sleeps, (std::vector<std::chrono::milliseconds>{
                        std::chrono::milliseconds(10),
                        std::chrono::milliseconds(20)}));
}

TEST(RunJobsTest, GivesUpAfterMaxAttemptsOrPermanentError) {
  MockChatClient client([](const ChatRequest&) { return "text"; });
  client.EnqueueFailures(3);
  RunOptions options = NoSleep();
  options.max_attempts = 3;
  const std::vector<GenerationJob> jobs = {OneJob(1)};
  EXPECT_FA_ERROR(RunJobs(jobs, client, options), kProvider);

  MockChatClient permanent([](const ChatRequest&) { return "text"; });
  permanent.EnqueueFailures(1, false);
  EXPECT_FA_ERROR(RunJobs(jobs, permanent, options), kProvider);
  EXPECT_EQ(permanent.calls(), 1u);
}

TEST(RunJobsTest, RequestCap) {
  MockChatClient client([](const ChatRequest&) { return "text"; });
  std::vector<GenerationJob> jobs;
  for (int i = 0; i < 20; ++i) {
    jobs.push_back({std::to_string(i + 1), "m", "p", {}, 1});
  }
  RunOptions options = NoSleep();
  options.request_cap = 10;
  EXPECT_FA_ERROR(RunJobs(jobs, client, options), kBudgetExceeded);
  EXPECT_EQ(client.calls(), 10u);
}

TEST(RunJobsTest, LedgerMakesRerunsFree) {
  testutil::TempDir dir;
  RunOptions options = NoSleep();
  options.ledger = dir / "ledger.jsonl";
  const std::vector<GenerationJob> jobs = {OneJob(3), {"2", "model-b", "p", {}, 2}};
  MockChatClient first([](const ChatRequest& r) { return "from " + r.model; });
  const RunResult a = RunJobs(jobs, first, options);
  EXPECT_EQ(first.calls(), 5u);

  MockChatClient second([](const ChatRequest&) { return "other"; });
  const RunResult b = RunJobs(jobs, second, options);
  EXPECT_EQ(second.calls(), 0u);
  EXPECT_EQ(b.resumed, 5u);
  ASSERT_EQ(b.descriptions.size(), 5u);
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_EQ(b.descriptions[i].doc_id, a.descriptions[i].doc_id);
    EXPECT_EQ(b.descriptions[i].text, a.descriptions[i].text);
  }
}

TEST(RunJobsTest, TornLedgerLineIsRedone) {
  testutil::TempDir dir;
  RunOptions options = NoSleep();
  options.ledger = dir / "ledger.jsonl";
  const std::vector<GenerationJob> jobs = {OneJob(2)};
  MockChatClient first([](const ChatRequest&) { return "ok"; });
  RunJobs(jobs, first, options);
  std::string ledger = ReadFile(*options.ledger);
  ledger.resize(ledger.size() - 10);  // cut the second record mid-line
  {
    std::ofstream out(*options.ledger, std::ios::trunc | std::ios::binary);
    out << ledger;
  }
  MockChatClient second([](const ChatRequest&) { return "again"; });
  const RunResult r = RunJobs(jobs, second, options);
  EXPECT_EQ(second.calls(), 1u);
  EXPECT_EQ(r.resumed, 1u);
  EXPECT_EQ(r.descriptions[1].text, "again");
  EXPECT_EQ(ParseDescriptions(ReadFile(*options.ledger)).size(), 2u);
}

TEST(DryRunTest, Deterministic) {
  DryRunChatClient client;
  const ChatRequest req{"m", "prompt", 0.6, 0.9};
  EXPECT_EQ(client.Complete(req), client.Complete(req));
  EXPECT_FALSE(client.Complete(req).empty());
}

TEST(HttpClientTest, UnreachableEndpointIsTransient) {
  HttpChatClient client("http://127.0.0.1:1/v1", "key", std::chrono::seconds(2));
  try {
    client.Complete({"m", "p", std::nullopt, std::nullopt});
    ADD_FAILURE() << "expected a provider error";
  } catch (const ProviderError& e) {
    EXPECT_TRUE(e.transient());
  }
}

}  // namespace
}  // namespace fidaudit
