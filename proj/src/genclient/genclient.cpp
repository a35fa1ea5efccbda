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

#include "genclient/genclient.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdio>
#include <map>
#include <thread>

#include "common/io.hpp"
#include "common/text.hpp"

namespace fidaudit {

namespace {

// Wording is a reconstruction of the letter-writing instructions, not a
// verbatim copy of any published prompt.
constexpr std::string_view kGuidelines =
    "Guidelines:\n"
    "1. Write in a formal register suitable for a bank.\n"
    "2. Stay broadly in line with the profile below; small deviations are "
    "acceptable.\n"
    "3. Begin and end the way a real letter would, with a salutation and a "
    "sign-off.\n"
    "4. Keep the letter about the loan you are requesting.\n"
    "5. Fill gaps with believable personal details of your own.\n"
    "6. Make the letter your own so that it reads differently from letters "
    "by other applicants with a similar profile.\n";

}  // namespace

std::string BuildPrompt(const InputRepresentation* x,
                        const FeatureSchema& schema, PromptMode mode,
                        const PromptOptions& options) {
  if (mode == PromptMode::kValueBased && x == nullptr) {
    throw Error(ErrorCode::kMissingRepresentation,
                "value-based prompt needs an input representation");
  }
  std::string out = "You are ";
  out += options.persona.empty() ? "a person" : options.persona;
  out += " applying for a loan at a bank. Write the application letter you "
         "would send to the bank in support of your request.\n\n";
  out += kGuidelines;
  out += "\n";
  if (mode == PromptMode::kValueBased) {
    out += "Your profile:\n";
    for (std::size_t i = 0; i < schema.size(); ++i) {
      out += "- " + schema.features()[i].display_name + ": " +
             x->values.at(i).decoded + "\n";
    }
  } else {
    out += "Your profile covers the following attributes; choose suitable "
           "values for them yourself:\n";
    for (const FeatureDef& f : schema.features()) {
      out += "- " + f.display_name + "\n";
    }
  }
  out += "\nReply with the letter text only.\n";
  return out;
}

bool AcceptsSamplingParams(std::string_view model) {
  const std::size_t slash = model.rfind('/');
  if (slash != std::string_view::npos) model.remove_prefix(slash + 1);
  if (model.size() >= 2 && (model[0] == 'o' || model[0] == 'O') &&
      std::isdigit(static_cast<unsigned char>(model[1]))) {
    return false;
  }
  return true;
}

std::string GenerationJob::DocId(int variant_index) const {
  return generator_id + "_" + (profile_id ? *profile_id : "free") + "_" +
         std::to_string(variant_index);
}

void GenerationJob::Validate() const {
  if (generator_id.empty()) {
    throw Error(ErrorCode::kValidation, "job has no generator_id");
  }
  if (n_variants < 1) {
    throw Error(ErrorCode::kValidation,
                "job " + DocId(0) + ": n_variants must be >= 1");
  }
  if (prompt.empty()) {
    throw Error(ErrorCode::kValidation, "job " + DocId(0) + ": empty prompt");
  }
  if (profile_id && profile_id->empty()) {
    throw Error(ErrorCode::kValidation, "job has an empty profile_id");
  }
}

std::vector<GenerationJob> MakeJobs(const FeatureSchema& schema,
                                    std::span<const InputRepresentation> reps,
                                    std::span<const std::string> models,
                                    PromptMode mode, int n_variants,
                                    SamplingParams params,
                                    const PromptOptions& options) {
  std::vector<GenerationJob> jobs;
  for (const std::string& model : models) {
    GenerationJob base;
    base.generator_id = model;
    base.n_variants = n_variants;
    base.params = AcceptsSamplingParams(model) ? params : SamplingParams{{}, {}};
    if (mode == PromptMode::kFree) {
      base.prompt = BuildPrompt(nullptr, schema, mode, options);
      base.Validate();
      jobs.push_back(std::move(base));
      continue;
    }
    for (const InputRepresentation& x : reps) {
      GenerationJob job = base;
      job.profile_id = x.profile_id;
      job.prompt = BuildPrompt(&x, schema, mode, options);
      job.Validate();
      jobs.push_back(std::move(job));
    }
  }
  return jobs;
}

MockChatClient::MockChatClient(Responder fallback)
    : fallback_(std::move(fallback)) {}

void MockChatClient::Enqueue(Outcome outcome) {
  std::lock_guard lock(mu_);
  script_.push_back(std::move(outcome));
}

void MockChatClient::EnqueueFailures(int count, bool transient) {
  for (int i = 0; i < count; ++i) Enqueue(Outcome{std::nullopt, transient});
}

std::string MockChatClient::Complete(const ChatRequest& request) {
  std::optional<Outcome> outcome;
  Responder fallback;
  {
    std::lock_guard lock(mu_);
    requests_.push_back(request);
    if (!script_.empty()) {
      outcome = std::move(script_.front());
      script_.pop_front();
    }
    fallback = fallback_;
  }
  if (outcome) {
    if (!outcome->text) throw ProviderError(outcome->error, outcome->transient);
    return *outcome->text;
  }
  if (fallback) return fallback(request);
  return "Dear Sir or Madam,\n\nmock letter.\n\nYours faithfully";
}

std::size_t MockChatClient::calls() const {
  std::lock_guard lock(mu_);
  return requests_.size();
}

std::vector<ChatRequest> MockChatClient::requests() const {
  std::lock_guard lock(mu_);
  return requests_;
}

std::string DryRunChatClient::Complete(const ChatRequest& request) {
  const std::size_t hash = std::hash<std::string>{}(request.prompt);
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016zx", hash);
  return "Dear Sir or Madam,\n\nThis is a dry-run placeholder from " +
         request.model + " for prompt " + buf +
         ".\n\nYours faithfully,\nThe applicant";
}

std::chrono::milliseconds BackoffDelay(int retry,
                                       std::chrono::milliseconds base,
                                       std::chrono::milliseconds cap) {
  std::chrono::milliseconds delay = base;
  for (int i = 1; i < retry && delay < cap; ++i) delay *= 2;
  return std::min(delay, cap);
}

namespace {

struct WorkItem {
  const GenerationJob* job;
  int variant;
  std::string doc_id;
};

// Loads finished letters; a torn final line (crash mid-append) is dropped and
// the file rewritten without it.
std::map<std::string, SelfDescription> LoadLedger(
    const std::filesystem::path& path) {
  std::map<std::string, SelfDescription> done;
  if (!std::filesystem::exists(path)) return done;
  const std::string text = ReadFile(path);
  std::string kept;
  std::size_t pos = 0;
  bool torn = false;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    const bool terminated = end != std::string::npos;
    if (!terminated) end = text.size();
    const std::string_view line(text.data() + pos, end - pos);
    pos = end + 1;
    if (Trim(line).empty()) continue;
    try {
      auto parsed = ParseDescriptions(line);
      for (auto& d : parsed) done[d.doc_id] = std::move(d);
      kept.append(line);
      kept.push_back('\n');
    } catch (const Error&) {
      if (terminated) throw;
      torn = true;
    }
  }
  if (torn) WriteFileAtomic(path, kept);
  return done;
}

class LedgerWriter {
 public:
  explicit LedgerWriter(const std::filesystem::path& path) {
    if (path.has_parent_path()) {
      std::filesystem::create_directories(path.parent_path());
    }
    fd_ = ::open(path.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
    if (fd_ < 0) {
      throw Error(ErrorCode::kIo, "cannot open ledger " + path.string());
    }
  }
  ~LedgerWriter() {
    if (fd_ >= 0) ::close(fd_);
  }
  LedgerWriter(const LedgerWriter&) = delete;
  LedgerWriter& operator=(const LedgerWriter&) = delete;

  void Append(const SelfDescription& d) {
    const std::string line = SerializeDescription(d) + "\n";
    std::lock_guard lock(mu_);
    std::size_t off = 0;
    while (off < line.size()) {
      const ssize_t n = ::write(fd_, line.data() + off, line.size() - off);
      if (n < 0) throw Error(ErrorCode::kIo, "ledger write failed");
      off += static_cast<std::size_t>(n);
    }
    ::fsync(fd_);
  }

 private:
  int fd_ = -1;
  std::mutex mu_;
};

}  // namespace

RunResult RunJobs(std::span<const GenerationJob> jobs, ChatClient& client,
                  const RunOptions& options) {
  for (const GenerationJob& job : jobs) job.Validate();
  if (options.max_attempts < 1) {
    throw Error(ErrorCode::kInvalidArgument, "max_attempts must be >= 1");
  }

  std::map<std::string, SelfDescription> done;
  if (options.ledger) done = LoadLedger(*options.ledger);

  RunResult result;
  std::vector<WorkItem> pending;
  std::vector<std::string> order;
  for (const GenerationJob& job : jobs) {
    for (int v = 1; v <= job.n_variants; ++v) {
      WorkItem item{&job, v, job.DocId(v)};
      order.push_back(item.doc_id);
      if (done.contains(item.doc_id)) {
        ++result.resumed;
      } else {
        pending.push_back(std::move(item));
      }
    }
  }

  std::optional<LedgerWriter> ledger;
  if (options.ledger && !pending.empty()) ledger.emplace(*options.ledger);

  const auto sleep = options.sleep
                         ? options.sleep
                         : [](std::chrono::milliseconds d) {
                             std::this_thread::sleep_for(d);
                           };
  std::mutex mu;  // guards done, result.attempts, first_error
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> requests{0};
  std::atomic<bool> stop{false};
  bool budget_hit = false;
  std::optional<ProviderError> first_error;

  auto record = [&](AttemptRecord rec) {
    std::lock_guard lock(mu);
    if (options.on_attempt) options.on_attempt(rec);
    result.attempts.push_back(std::move(rec));
  };

  auto work = [&] {
    for (std::size_t i = next++; i < pending.size() && !stop; i = next++) {
      const WorkItem& item = pending[i];
      ChatRequest request{item.job->generator_id, item.job->prompt,
                          item.job->params.temperature, item.job->params.top_p};
      for (int attempt = 1;; ++attempt) {
        if (stop) return;
        const std::size_t slot = requests++;
        if (options.request_cap && slot >= *options.request_cap) {
          std::lock_guard lock(mu);
          budget_hit = true;
          stop = true;
          return;
        }
        try {
          std::string text = client.Complete(request);
          SelfDescription d;
          d.doc_id = item.doc_id;
          d.profile_id = item.job->profile_id;
          d.generator_id = item.job->generator_id;
          d.variant_index = item.variant;
          d.char_count = CodePointLength(text);
          d.text = std::move(text);
          if (Trim(d.text).empty()) {
            throw ProviderError("empty completion", true);
          }
          if (!IsValidUtf8(d.text)) {
            throw ProviderError("completion is not valid UTF-8", true);
          }
          if (ledger) ledger->Append(d);
          record({item.doc_id, attempt, true, {}});
          std::lock_guard lock(mu);
          done[d.doc_id] = std::move(d);
          break;
        } catch (const ProviderError& e) {
          record({item.doc_id, attempt, false, e.what()});
          if (!e.transient() || attempt >= options.max_attempts) {
            std::lock_guard lock(mu);
            if (!first_error) {
              first_error.emplace(item.doc_id + ": " + e.what() + " (after " +
                                      std::to_string(attempt) + " attempt" +
                                      (attempt == 1 ? "" : "s") + ")",
                                  e.transient());
            }
            stop = true;
            return;
          }
          sleep(BackoffDelay(attempt, options.base_delay, options.max_delay));
        }
      }
    }
  };

  const std::size_t threads =
      std::clamp<std::size_t>(options.concurrency, 1,
                              std::max<std::size_t>(1, pending.size()));
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(work);
    work();
  }

  result.requests = std::min(requests.load(), options.request_cap.value_or(
                                                  requests.load()));
  if (first_error) throw *first_error;
  if (budget_hit) {
    throw Error(ErrorCode::kBudgetExceeded,
                "request cap of " + std::to_string(*options.request_cap) +
                    " reached with " +
                    std::to_string(order.size() - done.size()) +
                    " letter(s) outstanding");
  }
  for (const std::string& id : order) {
    result.descriptions.push_back(std::move(done.at(id)));
  }
  return result;
}

}  // namespace fidaudit
