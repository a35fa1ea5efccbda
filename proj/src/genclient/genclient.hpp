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

#ifndef FIDAUDIT_GENCLIENT_GENCLIENT_HPP_
#define FIDAUDIT_GENCLIENT_GENCLIENT_HPP_

#include <chrono>
#include <cstddef>
#include <deque>
#include <filesystem>
#include <functional>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "common/error.hpp"
#include "corpus/corpus.hpp"
#include "corpus/schema.hpp"

namespace fidaudit {

enum class PromptMode { kValueBased, kFree };

struct PromptOptions {
  // Inserted into the role framing, e.g. "a retired carpenter". Empty keeps
  // the neutral default.
  std::string persona;
};

// Deterministic letter-writing prompt. Value-based prompts list every
// feature as "- <display name>: <decoded value>"; free prompts list display
// names only and do not depend on any representation. Throws
// kMissingRepresentation when value-based mode gets no representation.
std::string BuildPrompt(const InputRepresentation* x,
                        const FeatureSchema& schema, PromptMode mode,
                        const PromptOptions& options = {});

struct SamplingParams {
  std::optional<double> temperature = 0.6;
  std::optional<double> top_p = 0.9;
};

// False for reasoning-model families that reject sampling parameters
// (o1, o3, o4-mini, ...), matched on the part after the last '/'.
bool AcceptsSamplingParams(std::string_view model);

struct GenerationJob {
  std::optional<std::string> profile_id;  // empty for free-mode jobs
  std::string generator_id;
  std::string prompt;
  SamplingParams params;
  int n_variants = 5;

  bool is_free() const { return !profile_id.has_value(); }
  // "<generator>_<profile>_<variant>" or "<generator>_free_<variant>".
  std::string DocId(int variant_index) const;
  // Throws kValidation.
  void Validate() const;
};

// One job per (representation, model) in value-based mode, or one per model
// in free mode. Sampling parameters are dropped for models that reject them.
std::vector<GenerationJob> MakeJobs(
    const FeatureSchema& schema, std::span<const InputRepresentation> reps,
    std::span<const std::string> models, PromptMode mode, int n_variants,
    SamplingParams params = {}, const PromptOptions& options = {});

struct ChatRequest {
  std::string model;
  std::string prompt;
  std::optional<double> temperature;
  std::optional<double> top_p;
};

// Provider failure. Transient failures (timeouts, rate limits, 5xx) are
// retried; others are not.
class ProviderError : public Error {
 public:
  ProviderError(std::string message, bool transient)
      : Error(ErrorCode::kProvider, std::move(message)), transient_(transient) {}
  bool transient() const { return transient_; }

 private:
  bool transient_;
};

// Chat completion endpoint. Implementations must be safe to call from
// several threads.
class ChatClient {
 public:
  virtual ~ChatClient() = default;
  // Returns the generated text or throws ProviderError.
  virtual std::string Complete(const ChatRequest& request) = 0;
};

// Scripted client for tests. Queued outcomes are consumed first (in call
// order); afterwards the fallback responder answers.
class MockChatClient : public ChatClient {
 public:
  struct Outcome {
    std::optional<std::string> text;  // nullopt means failure
    bool transient = true;
    std::string error = "scripted failure";
  };
  using Responder = std::function<std::string(const ChatRequest&)>;

  explicit MockChatClient(Responder fallback = nullptr);

  void Enqueue(Outcome outcome);
  void EnqueueFailures(int count, bool transient = true);

  std::string Complete(const ChatRequest& request) override;

  std::size_t calls() const;
  std::vector<ChatRequest> requests() const;

 private:
  mutable std::mutex mu_;
  Responder fallback_;
  std::deque<Outcome> script_;
  std::vector<ChatRequest> requests_;
};

// Offline client producing a short deterministic placeholder letter.
class DryRunChatClient : public ChatClient {
 public:
  std::string Complete(const ChatRequest& request) override;
};

// OpenAI-compatible /chat/completions client.
class HttpChatClient : public ChatClient {
 public:
  // `base_url` like "https://api.example.com/v1".
  HttpChatClient(std::string base_url, std::string api_key,
                 std::chrono::seconds timeout = std::chrono::seconds(120));
  // Reads FIDAUDIT_API_BASE and FIDAUDIT_API_KEY. Throws kInvalidArgument
  // when the base URL is unset.
  static HttpChatClient FromEnvironment();

  std::string Complete(const ChatRequest& request) override;

 private:
  std::string scheme_host_port_;
  std::string path_prefix_;
  std::string api_key_;
  std::chrono::seconds timeout_;
};

struct AttemptRecord {
  std::string doc_id;
  int attempt = 0;
  bool ok = false;
  std::string error;
};

struct RunOptions {
  int max_attempts = 5;
  std::chrono::milliseconds base_delay{1000};
  std::chrono::milliseconds max_delay{30000};
  std::function<void(std::chrono::milliseconds)> sleep;  // default: sleep_for
  std::optional<std::size_t> request_cap;
  std::size_t concurrency = 4;
  // Completed descriptions are appended here and skipped on later runs.
  std::optional<std::filesystem::path> ledger;
  std::function<void(const AttemptRecord&)> on_attempt;
};

struct RunResult {
  std::vector<SelfDescription> descriptions;  // job order, then variant
  std::vector<AttemptRecord> attempts;        // this run only
  std::size_t requests = 0;
  std::size_t resumed = 0;  // taken from the ledger without a request
};

// Generates every (job, variant) letter. Throws ProviderError once a request
// exhausts its attempts or fails permanently, and Error(kBudgetExceeded) when
// the request cap stops the run early; finished letters stay in the ledger
// in both cases.
RunResult RunJobs(std::span<const GenerationJob> jobs, ChatClient& client,
                  const RunOptions& options = {});

// Delay before retry number `retry` (1-based): base * 2^(retry-1), capped.
std::chrono::milliseconds BackoffDelay(int retry, std::chrono::milliseconds base,
                                       std::chrono::milliseconds cap);

}  // namespace fidaudit

#endif  // FIDAUDIT_GENCLIENT_GENCLIENT_HPP_
