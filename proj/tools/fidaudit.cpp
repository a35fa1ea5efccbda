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

// fidaudit command-line entry point. Talks to the library only through the
// C API.

#include <signal.h>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fidaudit/fidaudit.h"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

std::string Escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

int ReportError(const std::string& code, const std::string& message,
                int exit_code) {
  std::cerr << "error: code=" << code << " message=\"" << Escape(message)
            << "\"\n";
  return exit_code;
}

// Thrown by subcommand bodies; carries the C API status.
struct CommandFailure {
  fa_status status;
  std::string message;
};

struct UsageFailure {
  std::string message;
};

void Check(fa_status status) {
  if (status != FA_OK) throw CommandFailure{status, fa_last_error()};
}

// Owns a string returned by the C API.
class ApiString {
 public:
  ApiString() = default;
  ~ApiString() { fa_free_string(ptr_); }
  ApiString(const ApiString&) = delete;
  ApiString& operator=(const ApiString&) = delete;
  char** out() { return &ptr_; }
  std::string str() const { return ptr_ == nullptr ? "" : ptr_; }

 private:
  char* ptr_ = nullptr;
};

template <typename T, void (*Free)(T*)>
class Handle {
 public:
  Handle() = default;
  ~Handle() { Free(ptr_); }
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  T** out() { return &ptr_; }
  T* get() const { return ptr_; }

 private:
  T* ptr_ = nullptr;
};

using Corpus = Handle<fa_corpus, fa_corpus_free>;
using Schema = Handle<fa_schema, fa_schema_free>;
using Embeddings = Handle<fa_embeddings, fa_embeddings_free>;
using Service = Handle<fa_service, fa_service_free>;

void WriteOutput(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  out.close();
  if (!out) throw CommandFailure{FA_E_IO, "cannot write " + path};
}

std::vector<std::string> SplitList(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

std::vector<const char*> CStrings(const std::vector<std::string>& v) {
  std::vector<const char*> out;
  for (const auto& s : v) out.push_back(s.c_str());
  return out;
}

// --docs takes a file with one id per line, or a comma-separated list.
std::vector<std::string> ReadIdList(const std::string& arg) {
  std::ifstream file(arg);
  if (!file) return SplitList(arg);
  std::vector<std::string> ids;
  std::string line;
  while (std::getline(file, line)) {
    const auto b = line.find_first_not_of(" \t\r");
    const auto e = line.find_last_not_of(" \t\r");
    if (b != std::string::npos) ids.push_back(line.substr(b, e - b + 1));
  }
  return ids;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Representation-fidelity auditing toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", fa_version());

  // ingest
  std::string schema_path, reps_path, descs_path, out_path;
  auto* ingest = app.add_subcommand(
      "ingest", "Build a corpus directory from schema, representations and "
                "descriptions");
  ingest->add_option("--schema", schema_path, "Feature schema JSON")->required();
  ingest->add_option("--representations", reps_path,
                     "Raw GCD rows or JSON lines")->required();
  ingest->add_option("--descriptions", descs_path, "Descriptions JSON lines");
  ingest->add_option("--out", out_path, "Corpus directory")->required();

  // validate
  std::string corpus_dir, annotations_dir;
  double coverage_threshold = 0.9;
  auto* validate = app.add_subcommand("validate", "Validate a corpus directory");
  validate->add_option("corpus", corpus_dir, "Corpus directory")->required();
  validate->add_option("--annotations", annotations_dir,
                       "Also check an annotation directory");
  validate->add_option("--coverage-threshold", coverage_threshold,
                       "Warn below this span coverage")
      ->capture_default_str();

  // sample
  std::size_t sample_n = 47;
  std::uint64_t seed = 7;
  bool value_based_only = false;
  auto* sample = app.add_subcommand("sample", "Draw documents for annotation");
  sample->add_option("--corpus", corpus_dir, "Corpus directory")->required();
  sample->add_option("--n", sample_n, "Sample size")->capture_default_str();
  sample->add_option("--seed", seed, "Random seed")->capture_default_str();
  sample->add_flag("--value-based-only", value_based_only,
                   "Skip free letters");
  sample->add_option("--out", out_path, "Output file (default stdout)");

  // fidelity
  std::string label;
  std::string compare_list;
  auto* fidelity = app.add_subcommand(
      "fidelity", "Count mismatch components and write a fidelity report");
  fidelity->add_option("--corpus", corpus_dir, "Corpus directory");
  fidelity->add_option("--annotations", annotations_dir,
                       "Annotation directory");
  fidelity->add_option("--out", out_path,
                       "Report directory (ranking CSV with --compare)");
  fidelity->add_option("--label", label, "Run label");
  fidelity->add_option("--compare", compare_list,
                       "Rank saved reports instead: r1,r2[,...]");

  // agreement
  std::string annotators, mode_name = "both";
  auto* agreement = app.add_subcommand(
      "agreement", "Span-level F1 between two annotators");
  agreement->add_option("--annotations", annotations_dir,
                        "Annotation directory")->required();
  agreement->add_option("--annotators", annotators, "A,B")->required();
  agreement->add_option("--mode", mode_name, "strict|relaxed|both")
      ->check(CLI::IsMember({"strict", "relaxed", "both"}))
      ->capture_default_str();
  agreement->add_option("--corpus", corpus_dir,
                        "Corpus directory (for its schema)");
  agreement->add_option("--schema", schema_path, "Schema JSON");
  agreement->add_option("--out", out_path, "Output CSV (default stdout)");

  // wmd
  std::string docs_arg, embeddings_path, variant_name = "plain", method;
  std::size_t threads = 0, dim = 0;
  auto* wmd = app.add_subcommand(
      "wmd", "Word Mover's Distance between letters and representations");
  wmd->add_option("--corpus", corpus_dir, "Corpus directory")->required();
  wmd->add_option("--docs", docs_arg,
                  "File with one doc id per line, or id1,id2,...");
  wmd->add_option("--embeddings", embeddings_path, "Word vectors")->required();
  wmd->add_option("--variant", variant_name, "plain|preprocessed")
      ->check(CLI::IsMember({"plain", "preprocessed"}))
      ->capture_default_str();
  wmd->add_option("--method", method, "Method name in the output");
  wmd->add_option("--threads", threads, "Worker threads (0: all cores)");
  wmd->add_option("--dim", dim, "Expected vector dimension");
  wmd->add_option("--out", out_path, "Output CSV (default stdout)");

  // correlate
  std::string distances_list, report_path;
  auto* correlate = app.add_subcommand(
      "correlate", "Pearson correlation of distances with fidelity components");
  correlate->add_option("--distances", distances_list, "d1.csv[,d2.csv...]")
      ->required();
  correlate->add_option("--fidelity", report_path, "Fidelity report")
      ->required();
  correlate->add_option("--out", out_path, "Output CSV (default stdout)");

  // generate
  std::string models_list, persona;
  int variants = 5;
  bool free_mode = false, dry_run = false, verbose = false;
  double temperature = 0.6, top_p = 0.9;
  std::size_t request_cap = 0, concurrency = 4;
  int max_attempts = 5;
  auto* generate = app.add_subcommand(
      "generate", "Generate self-descriptions through a chat endpoint");
  generate->add_option("--schema", schema_path, "Feature schema JSON")
      ->required();
  generate->add_option("--representations", reps_path, "Representations");
  generate->add_option("--models", models_list, "m1,m2,...")->required();
  generate->add_option("--variants", variants, "Letters per profile and model")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  generate->add_flag("--free", free_mode, "Withhold representation values");
  generate->add_option("--out", out_path, "Output directory")->required();
  generate->add_flag("--dry-run", dry_run, "Use an offline placeholder client");
  generate->add_option("--temperature", temperature,
                       "Sampling temperature (negative: omit)")
      ->capture_default_str();
  generate->add_option("--top-p", top_p, "Nucleus mass (negative: omit)")
      ->capture_default_str();
  generate->add_option("--request-cap", request_cap,
                       "Stop after this many requests (0: unlimited)");
  generate->add_option("--concurrency", concurrency, "Parallel requests")
      ->capture_default_str();
  generate->add_option("--max-attempts", max_attempts,
                       "Attempts per letter")->capture_default_str();
  generate->add_option("--persona", persona, "Persona phrase for the prompt");
  generate->add_flag("--verbose", verbose, "Log every attempt to stderr");

  // serve
  std::string host = "127.0.0.1";
  int port = 8080;
  auto* serve = app.add_subcommand("serve", "Run the annotation service");
  serve->add_option("--corpus", corpus_dir, "Corpus directory")->required();
  serve->add_option("--annotations", annotations_dir, "Annotation directory")
      ->required();
  serve->add_option("--host", host, "Bind address")->capture_default_str();
  serve->add_option("--port", port, "Port (0: any free port)")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return ReportError("UsageError", e.what(), kExitUsage);
  }

  try {
    if (*ingest) {
      Corpus corpus;
      Check(fa_corpus_ingest(schema_path.c_str(), reps_path.c_str(),
                             descs_path.empty() ? nullptr : descs_path.c_str(),
                             corpus.out()));
      Check(fa_corpus_save(corpus.get(), out_path.c_str()));
      ApiString stats;
      Check(fa_corpus_stats_json(corpus.get(), stats.out()));
      WriteOutput("", stats.str());
    } else if (*validate) {
      Corpus corpus;
      Check(fa_corpus_load(corpus_dir.c_str(), corpus.out()));
      ApiString stats;
      Check(fa_corpus_stats_json(corpus.get(), stats.out()));
      WriteOutput("", stats.str());
      if (!annotations_dir.empty()) {
        ApiString report;
        Check(fa_validate_annotations(corpus.get(), annotations_dir.c_str(),
                                      coverage_threshold, report.out()));
        WriteOutput("", report.str());
      }
    } else if (*sample) {
      Corpus corpus;
      Check(fa_corpus_load(corpus_dir.c_str(), corpus.out()));
      ApiString ids;
      Check(fa_corpus_sample(corpus.get(), sample_n, seed,
                             value_based_only ? 1 : 0, ids.out()));
      WriteOutput(out_path, ids.str());
    } else if (*fidelity) {
      if (!compare_list.empty()) {
        const auto reports = SplitList(compare_list);
        const auto ptrs = CStrings(reports);
        ApiString csv;
        Check(fa_fidelity_compare(ptrs.data(), ptrs.size(), csv.out()));
        WriteOutput(out_path, csv.str());
      } else {
        if (corpus_dir.empty() || annotations_dir.empty() || out_path.empty()) {
          throw UsageFailure{
              "fidelity needs --corpus, --annotations and --out (or --compare)"};
        }
        Corpus corpus;
        Check(fa_corpus_load(corpus_dir.c_str(), corpus.out()));
        ApiString summary;
        Check(fa_fidelity_run(corpus.get(), annotations_dir.c_str(),
                              label.c_str(), out_path.c_str(), summary.out()));
        WriteOutput("", summary.str());
      }
    } else if (*agreement) {
      const auto pair = SplitList(annotators);
      if (pair.size() != 2) throw UsageFailure{"--annotators expects A,B"};
      Schema schema;
      if (!schema_path.empty()) {
        Check(fa_schema_load(schema_path.c_str(), schema.out()));
      } else if (!corpus_dir.empty()) {
        Check(fa_schema_load((corpus_dir + "/schema.json").c_str(),
                             schema.out()));
      } else {
        throw UsageFailure{"agreement needs --corpus or --schema"};
      }
      const fa_match_mode mode = mode_name == "strict"    ? FA_MATCH_STRICT
                                 : mode_name == "relaxed" ? FA_MATCH_RELAXED
                                                          : FA_MATCH_BOTH;
      ApiString csv;
      Check(fa_agreement_run(schema.get(), annotations_dir.c_str(),
                             pair[0].c_str(), pair[1].c_str(), mode,
                             csv.out()));
      WriteOutput(out_path, csv.str());
    } else if (*wmd) {
      Corpus corpus;
      Check(fa_corpus_load(corpus_dir.c_str(), corpus.out()));
      Embeddings table;
      Check(fa_embeddings_load(embeddings_path.c_str(), dim, table.out()));
      std::vector<std::string> ids;
      if (!docs_arg.empty()) {
        ids = ReadIdList(docs_arg);
        if (ids.empty()) throw UsageFailure{"--docs lists no document"};
      }
      const auto ptrs = CStrings(ids);
      ApiString csv;
      Check(fa_wmd_run(corpus.get(), table.get(),
                       docs_arg.empty() ? nullptr : ptrs.data(), ptrs.size(),
                       variant_name == "plain" ? FA_WMD_PLAIN
                                               : FA_WMD_PREPROCESSED,
                       method.empty() ? nullptr : method.c_str(), threads,
                       csv.out()));
      WriteOutput(out_path, csv.str());
    } else if (*correlate) {
      const auto files = SplitList(distances_list);
      const auto ptrs = CStrings(files);
      ApiString csv;
      Check(fa_correlate(ptrs.data(), ptrs.size(), report_path.c_str(),
                         csv.out()));
      WriteOutput(out_path, csv.str());
    } else if (*generate) {
      const auto models = SplitList(models_list);
      const auto ptrs = CStrings(models);
      fa_generate_options options;
      fa_generate_options_init(&options);
      options.models = ptrs.data();
      options.num_models = ptrs.size();
      options.variants = variants;
      options.free_mode = free_mode ? 1 : 0;
      options.dry_run = dry_run ? 1 : 0;
      options.temperature = temperature;
      options.top_p = top_p;
      options.request_cap = request_cap;
      options.concurrency = concurrency;
      options.max_attempts = max_attempts;
      options.persona = persona.c_str();
      options.verbose = verbose ? 1 : 0;
      ApiString summary;
      Check(fa_generate(schema_path.c_str(),
                        reps_path.empty() ? nullptr : reps_path.c_str(),
                        &options, out_path.c_str(), summary.out()));
      WriteOutput("", summary.str());
    } else if (*serve) {
      // Block termination signals so the listener threads inherit the mask
      // and the main thread can wait for them synchronously.
      sigset_t signals;
      sigemptyset(&signals);
      sigaddset(&signals, SIGINT);
      sigaddset(&signals, SIGTERM);
      pthread_sigmask(SIG_BLOCK, &signals, nullptr);
      Service service;
      Check(fa_service_open(corpus_dir.c_str(), annotations_dir.c_str(),
                            service.out()));
      int bound = 0;
      Check(fa_service_listen(service.get(), host.c_str(), port, &bound));
      std::cout << "listening on http://" << host << ":" << bound << std::endl;
      int received = 0;
      sigwait(&signals, &received);
      fa_service_stop(service.get());
    }
  } catch (const CommandFailure& f) {
    return ReportError(fa_status_name(f.status), f.message, kExitFailure);
  } catch (const UsageFailure& f) {
    return ReportError("UsageError", f.message, kExitUsage);
  }
  return 0;
}
