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

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <iostream>
#include <map>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "agreement/agreement.hpp"
#include "annotation/annotation.hpp"
#include "annotation/registry.hpp"
#include "baseline/document.hpp"
#include "baseline/embeddings.hpp"
#include "baseline/wmd.hpp"
#include "common/error.hpp"
#include "common/io.hpp"
#include "corpus/corpus.hpp"
#include "corpus/schema.hpp"
#include "fidaudit/fidaudit.h"
#include "fidelity/fidelity.hpp"
#include "genclient/genclient.hpp"
#include "json.hpp"
#include "service/service.hpp"
#include "stats/stats.hpp"

namespace fs = std::filesystem;
using fidaudit::Error;
using fidaudit::ErrorCode;
using json = nlohmann::ordered_json;

struct fa_schema {
  fidaudit::FeatureSchema schema;
};

struct fa_corpus {
  std::shared_ptr<const fidaudit::Corpus> corpus;
};

struct fa_embeddings {
  fidaudit::EmbeddingTable table;
};

struct fa_service {
  std::shared_ptr<const fidaudit::Corpus> corpus;
  std::unique_ptr<fidaudit::AnnotationService> service;
  std::unique_ptr<fidaudit::HttpService> http;
};

namespace {

thread_local std::string g_last_error;

fa_status Fail(fa_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <typename F>
fa_status Guard(F&& body) {
  try {
    body();
    g_last_error.clear();
    return FA_OK;
  } catch (const Error& e) {
    return Fail(static_cast<fa_status>(e.code()), e.what());
  } catch (const nlohmann::json::exception& e) {
    return Fail(FA_E_PARSE, e.what());
  } catch (const fs::filesystem_error& e) {
    return Fail(FA_E_IO, e.what());
  } catch (const std::bad_alloc&) {
    return Fail(FA_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Fail(FA_E_INTERNAL, e.what());
  }
}

void Require(const void* p, const char* name) {
  if (p == nullptr) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(name) + " must not be NULL");
  }
}

char* Dup(std::string_view s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size());
  out[s.size()] = '\0';
  return out;
}

void Emit(char** out, std::string_view s) {
  if (out != nullptr) *out = Dup(s);
}

// Annotations must reference corpus documents and pass offset and label
// checks; the registry is taken from labels.json when present.
std::vector<fidaudit::AnnotationDoc> LoadCheckedAnnotations(
    const fidaudit::Corpus& corpus, const fs::path& dir) {
  if (!fs::is_directory(dir)) {
    throw Error(ErrorCode::kIo,
                "annotation directory not found: " + dir.string());
  }
  auto schema = std::shared_ptr<const fidaudit::FeatureSchema>(
      std::shared_ptr<const fidaudit::FeatureSchema>(), &corpus.schema());
  std::optional<fidaudit::LabelRegistry> registry;
  if (fs::exists(dir / fidaudit::kRegistryFile)) {
    registry.emplace(fidaudit::LabelRegistry::Parse(
        fidaudit::ReadFile(dir / fidaudit::kRegistryFile), schema));
  }
  auto docs = fidaudit::LoadAnnotationDir(dir, corpus.schema());
  for (const auto& doc : docs) {
    const fidaudit::SelfDescription* d = corpus.FindDescription(doc.doc_id);
    if (d == nullptr) {
      throw Error(ErrorCode::kValidation,
                  "annotation by \"" + doc.annotator_id +
                      "\" references unknown document \"" + doc.doc_id + "\"");
    }
    try {
      fidaudit::ValidateAnnotation(doc, d->char_count,
                                   registry ? &*registry : nullptr);
    } catch (const Error& e) {
      throw Error(e.code(), "annotation (" + doc.doc_id + ", " +
                                doc.annotator_id + "): " + e.what());
    }
  }
  return docs;
}

json AveragesJson(const fidaudit::ComponentAverages& a) {
  json out;
  for (const auto& col : fidaudit::ComponentColumns()) {
    out[col.name] = a.*col.field;
  }
  return out;
}

std::string StatsJson(const fidaudit::Corpus& corpus) {
  const fidaudit::CorpusStats s = fidaudit::ComputeStats(corpus);
  json hist = json::object();
  for (const auto& [k, v] : s.variants_per_pair) hist[std::to_string(k)] = v;
  return json{{"representations", s.representations},
              {"descriptions", s.descriptions},
              {"value_based", s.value_based},
              {"free", s.free},
              {"generators", s.generators},
              {"pairs", s.pairs},
              {"variants_per_pair", hist}}
      .dump(2);
}

}  // namespace

extern "C" {

const char* fa_status_name(fa_status status) {
  if (status == FA_OK) return "Ok";
  if (status < FA_E_PARSE || status > FA_E_INTERNAL) return "Unknown";
  return fidaudit::ErrorCodeName(static_cast<ErrorCode>(status));
}

const char* fa_last_error(void) { return g_last_error.c_str(); }

void fa_free_string(char* s) { std::free(s); }

const char* fa_version(void) { return "0.1.0"; }

fa_status fa_schema_load(const char* path, fa_schema** out) {
  return Guard([&] {
    Require(path, "path");
    Require(out, "out");
    *out = new fa_schema{fidaudit::LoadSchema(path)};
  });
}

void fa_schema_free(fa_schema* schema) { delete schema; }

size_t fa_schema_size(const fa_schema* schema) {
  return schema == nullptr ? 0 : schema->schema.size();
}

fa_status fa_schema_to_json(const fa_schema* schema, char** out) {
  return Guard([&] {
    Require(schema, "schema");
    Require(out, "out");
    Emit(out, schema->schema.Serialize());
  });
}

fa_status fa_corpus_ingest(const char* schema_path,
                           const char* representations_path,
                           const char* descriptions_path, fa_corpus** out) {
  return Guard([&] {
    Require(schema_path, "schema_path");
    Require(representations_path, "representations_path");
    Require(out, "out");
    fidaudit::FeatureSchema schema = fidaudit::LoadSchema(schema_path);
    auto reps = fidaudit::LoadRepresentations(representations_path, schema);
    std::vector<fidaudit::SelfDescription> descs;
    if (descriptions_path != nullptr) {
      descs = fidaudit::LoadDescriptions(descriptions_path);
    }
    *out = new fa_corpus{std::make_shared<const fidaudit::Corpus>(
        std::move(schema), std::move(reps), std::move(descs))};
  });
}

fa_status fa_corpus_load(const char* dir, fa_corpus** out) {
  return Guard([&] {
    Require(dir, "dir");
    Require(out, "out");
    *out = new fa_corpus{
        std::make_shared<const fidaudit::Corpus>(fidaudit::LoadCorpus(dir))};
  });
}

fa_status fa_corpus_save(const fa_corpus* corpus, const char* dir) {
  return Guard([&] {
    Require(corpus, "corpus");
    Require(dir, "dir");
    fidaudit::SaveCorpus(*corpus->corpus, dir);
  });
}

void fa_corpus_free(fa_corpus* corpus) { delete corpus; }

size_t fa_corpus_num_descriptions(const fa_corpus* corpus) {
  return corpus == nullptr ? 0 : corpus->corpus->descriptions().size();
}

size_t fa_corpus_num_representations(const fa_corpus* corpus) {
  return corpus == nullptr ? 0 : corpus->corpus->representations().size();
}

fa_status fa_corpus_stats_json(const fa_corpus* corpus, char** out) {
  return Guard([&] {
    Require(corpus, "corpus");
    Require(out, "out");
    Emit(out, StatsJson(*corpus->corpus));
  });
}

fa_status fa_corpus_sample(const fa_corpus* corpus, size_t n, uint64_t seed,
                           int value_based_only, char** out) {
  return Guard([&] {
    Require(corpus, "corpus");
    Require(out, "out");
    std::string text;
    for (const std::string& id : fidaudit::SampleForAnnotation(
             *corpus->corpus, n, seed, value_based_only != 0)) {
      text += id + "\n";
    }
    Emit(out, text);
  });
}

fa_status fa_validate_annotations(const fa_corpus* corpus,
                                  const char* annotations_dir,
                                  double coverage_threshold, char** out_json) {
  return Guard([&] {
    Require(corpus, "corpus");
    Require(annotations_dir, "annotations_dir");
    const auto docs = LoadCheckedAnnotations(*corpus->corpus, annotations_dir);
    json warnings = json::array();
    std::map<std::string, int> per_doc;
    for (const auto& doc : docs) {
      ++per_doc[doc.doc_id];
      const auto* d = corpus->corpus->FindDescription(doc.doc_id);
      const double coverage = doc.coverage_ratio(d->char_count);
      if (coverage < coverage_threshold) {
        warnings.push_back({{"doc_id", doc.doc_id},
                            {"annotator_id", doc.annotator_id},
                            {"coverage", coverage},
                            {"message", "coverage below threshold"}});
      }
    }
    Emit(out_json, json{{"annotations", docs.size()},
                        {"documents", per_doc.size()},
                        {"coverage_threshold", coverage_threshold},
                        {"warnings", std::move(warnings)}}
                       .dump(2));
  });
}

fa_status fa_fidelity_run(const fa_corpus* corpus, const char* annotations_dir,
                          const char* label, const char* out_dir,
                          char** out_summary_json) {
  return Guard([&] {
    Require(corpus, "corpus");
    Require(annotations_dir, "annotations_dir");
    Require(out_dir, "out_dir");
    const auto docs = LoadCheckedAnnotations(*corpus->corpus, annotations_dir);
    std::map<fidaudit::AnnotationKey, fidaudit::ComponentCounts> counts;
    for (const auto& doc : docs) {
      counts[{doc.doc_id, doc.annotator_id}] =
          fidaudit::CountComponents(doc, corpus->corpus->schema());
    }
    const fidaudit::FidelityReport report =
        fidaudit::Aggregate(counts, label == nullptr ? "" : label);
    fidaudit::WriteReport(report, out_dir);
    Emit(out_summary_json, json{{"label", report.label},
                                {"annotations", report.per_annotation.size()},
                                {"documents", report.per_document.size()},
                                {"mean", AveragesJson(report.mean)},
                                {"std", AveragesJson(report.stddev)}}
                               .dump(2));
  });
}

fa_status fa_fidelity_compare(const char* const* report_paths, size_t count,
                              char** out_csv) {
  return Guard([&] {
    Require(report_paths, "report_paths");
    Require(out_csv, "out_csv");
    std::vector<fidaudit::FidelityReport> reports;
    for (size_t i = 0; i < count; ++i) {
      Require(report_paths[i], "report path");
      reports.push_back(fidaudit::LoadReport(report_paths[i]));
    }
    const auto rows = fidaudit::CompareSystems(reports);
    Emit(out_csv, fidaudit::RankingToCsv(rows));
  });
}

fa_status fa_agreement_run(const fa_schema* schema, const char* annotations_dir,
                           const char* annotator_a, const char* annotator_b,
                           fa_match_mode mode, char** out_csv) {
  return Guard([&] {
    Require(schema, "schema");
    Require(annotations_dir, "annotations_dir");
    Require(annotator_a, "annotator_a");
    Require(annotator_b, "annotator_b");
    Require(out_csv, "out_csv");
    if (mode < FA_MATCH_STRICT || mode > FA_MATCH_BOTH) {
      throw Error(ErrorCode::kInvalidArgument, "unknown match mode");
    }
    const auto docs = fidaudit::LoadAnnotationDir(annotations_dir, schema->schema);
    std::vector<fidaudit::AgreementTable> tables;
    if (mode & FA_MATCH_STRICT) {
      tables.push_back(fidaudit::CompareAnnotators(
          docs, annotator_a, annotator_b, fidaudit::MatchMode::kStrict));
    }
    if (mode & FA_MATCH_RELAXED) {
      tables.push_back(fidaudit::CompareAnnotators(
          docs, annotator_a, annotator_b, fidaudit::MatchMode::kRelaxed));
    }
    Emit(out_csv, fidaudit::AgreementToCsv(tables));
  });
}

fa_status fa_embeddings_load(const char* path, size_t expected_dim,
                             fa_embeddings** out) {
  return Guard([&] {
    Require(path, "path");
    Require(out, "out");
    std::optional<std::size_t> dim;
    if (expected_dim > 0) dim = expected_dim;
    *out = new fa_embeddings{fidaudit::LoadEmbeddings(path, dim)};
  });
}

void fa_embeddings_free(fa_embeddings* table) { delete table; }

size_t fa_embeddings_dim(const fa_embeddings* table) {
  return table == nullptr ? 0 : table->table.dim();
}

size_t fa_embeddings_size(const fa_embeddings* table) {
  return table == nullptr ? 0 : table->table.size();
}

fa_status fa_wmd_texts(const fa_embeddings* table, const char* text_a,
                       const char* text_b, double* out) {
  return Guard([&] {
    Require(table, "table");
    Require(text_a, "text_a");
    Require(text_b, "text_b");
    Require(out, "out");
    const auto a = fidaudit::MakeNBow(fidaudit::Tokenize(text_a), table->table);
    const auto b = fidaudit::MakeNBow(fidaudit::Tokenize(text_b), table->table);
    *out = fidaudit::WordMoversDistance(a, b, table->table);
  });
}

fa_status fa_wmd_run(const fa_corpus* corpus, const fa_embeddings* table,
                     const char* const* doc_ids, size_t count,
                     fa_wmd_variant variant, const char* method,
                     size_t threads, char** out_csv) {
  return Guard([&] {
    Require(corpus, "corpus");
    Require(table, "table");
    Require(out_csv, "out_csv");
    if (variant != FA_WMD_PLAIN && variant != FA_WMD_PREPROCESSED) {
      throw Error(ErrorCode::kInvalidArgument, "unknown WMD variant");
    }
    std::vector<std::string> ids;
    if (doc_ids == nullptr) {
      for (const auto& d : corpus->corpus->descriptions()) {
        if (!d.is_free()) ids.push_back(d.doc_id);
      }
    } else {
      for (size_t i = 0; i < count; ++i) {
        Require(doc_ids[i], "doc id");
        ids.emplace_back(doc_ids[i]);
      }
    }
    const auto set = fidaudit::ComputeDistances(
        *corpus->corpus, ids, table->table,
        variant == FA_WMD_PLAIN ? fidaudit::WmdVariant::kPlain
                                : fidaudit::WmdVariant::kPreprocessed,
        method == nullptr ? "" : method, threads);
    Emit(out_csv, fidaudit::DistancesToCsv(set));
  });
}

fa_status fa_pearson(const double* xs, const double* ys, size_t n,
                     double* out) {
  return Guard([&] {
    Require(out, "out");
    if (n > 0) {
      Require(xs, "xs");
      Require(ys, "ys");
    }
    *out = fidaudit::Pearson({xs, n}, {ys, n});
  });
}

fa_status fa_correlate(const char* const* distance_paths, size_t count,
                       const char* fidelity_report, char** out_csv) {
  return Guard([&] {
    Require(distance_paths, "distance_paths");
    Require(fidelity_report, "fidelity_report");
    Require(out_csv, "out_csv");
    std::vector<fidaudit::DistanceSet> sets;
    for (size_t i = 0; i < count; ++i) {
      Require(distance_paths[i], "distance path");
      for (auto& s : fidaudit::LoadDistances(distance_paths[i])) {
        sets.push_back(std::move(s));
      }
    }
    if (sets.empty()) {
      throw Error(ErrorCode::kEmptyInput, "no distance rows to correlate");
    }
    const auto report = fidaudit::LoadReport(fidelity_report);
    const auto rows = fidaudit::CorrelationTable(sets, report);
    Emit(out_csv, fidaudit::CorrelationTableToCsv(rows));
  });
}

void fa_generate_options_init(fa_generate_options* options) {
  if (options == nullptr) return;
  *options = fa_generate_options{};
  options->variants = 5;
  options->temperature = 0.6;
  options->top_p = 0.9;
}

fa_status fa_generate(const char* schema_path, const char* representations_path,
                      const fa_generate_options* options, const char* out_dir,
                      char** out_summary_json) {
  return Guard([&] {
    Require(schema_path, "schema_path");
    Require(options, "options");
    Require(out_dir, "out_dir");
    if (options->num_models == 0 || options->models == nullptr) {
      throw Error(ErrorCode::kInvalidArgument, "at least one model is required");
    }
    const bool free_mode = options->free_mode != 0;
    if (!free_mode && representations_path == nullptr) {
      throw Error(ErrorCode::kMissingRepresentation,
                  "value-based generation needs representations");
    }
    fidaudit::FeatureSchema schema = fidaudit::LoadSchema(schema_path);
    std::vector<fidaudit::InputRepresentation> reps;
    if (representations_path != nullptr) {
      reps = fidaudit::LoadRepresentations(representations_path, schema);
    }
    std::vector<std::string> models;
    for (size_t i = 0; i < options->num_models; ++i) {
      Require(options->models[i], "model");
      models.emplace_back(options->models[i]);
    }
    fidaudit::SamplingParams params;
    if (options->temperature < 0) params.temperature.reset();
    else params.temperature = options->temperature;
    if (options->top_p < 0) params.top_p.reset();
    else params.top_p = options->top_p;
    fidaudit::PromptOptions prompt_options;
    if (options->persona != nullptr) prompt_options.persona = options->persona;
    const auto jobs = fidaudit::MakeJobs(
        schema, reps, models,
        free_mode ? fidaudit::PromptMode::kFree
                  : fidaudit::PromptMode::kValueBased,
        options->variants, params, prompt_options);

    fidaudit::RunOptions run;
    run.ledger = fs::path(out_dir) / "ledger.jsonl";
    if (options->request_cap > 0) run.request_cap = options->request_cap;
    if (options->concurrency > 0) run.concurrency = options->concurrency;
    if (options->max_attempts > 0) run.max_attempts = options->max_attempts;
    if (options->verbose) {
      run.on_attempt = [](const fidaudit::AttemptRecord& a) {
        std::cerr << "attempt doc_id=" << a.doc_id << " n=" << a.attempt
                  << (a.ok ? " ok" : " failed: " + a.error) << "\n";
      };
    }
    std::unique_ptr<fidaudit::ChatClient> client;
    if (options->dry_run) {
      client = std::make_unique<fidaudit::DryRunChatClient>();
    } else {
      client = std::make_unique<fidaudit::HttpChatClient>(
          fidaudit::HttpChatClient::FromEnvironment());
    }
    const fidaudit::RunResult result = fidaudit::RunJobs(jobs, *client, run);
    fidaudit::SaveCorpus(
        fidaudit::Corpus(std::move(schema), std::move(reps),
                         result.descriptions),
        out_dir);
    Emit(out_summary_json, json{{"jobs", jobs.size()},
                                {"letters", result.descriptions.size()},
                                {"requests", result.requests},
                                {"resumed", result.resumed},
                                {"attempts", result.attempts.size()}}
                               .dump(2));
  });
}

fa_status fa_build_prompt(const char* schema_path,
                          const char* representations_path,
                          const char* profile_id, const char* persona,
                          char** out) {
  return Guard([&] {
    Require(schema_path, "schema_path");
    Require(out, "out");
    const fidaudit::FeatureSchema schema = fidaudit::LoadSchema(schema_path);
    fidaudit::PromptOptions options;
    if (persona != nullptr) options.persona = persona;
    if (profile_id == nullptr) {
      Emit(out, fidaudit::BuildPrompt(nullptr, schema,
                                      fidaudit::PromptMode::kFree, options));
      return;
    }
    Require(representations_path, "representations_path");
    const auto reps = fidaudit::LoadRepresentations(representations_path, schema);
    for (const auto& x : reps) {
      if (x.profile_id == profile_id) {
        Emit(out, fidaudit::BuildPrompt(&x, schema,
                                        fidaudit::PromptMode::kValueBased,
                                        options));
        return;
      }
    }
    throw Error(ErrorCode::kMissingRepresentation,
                "no representation with profile_id \"" +
                    std::string(profile_id) + "\"");
  });
}

fa_status fa_service_open(const char* corpus_dir, const char* annotations_dir,
                          fa_service** out) {
  return Guard([&] {
    Require(corpus_dir, "corpus_dir");
    Require(annotations_dir, "annotations_dir");
    Require(out, "out");
    auto svc = std::make_unique<fa_service>();
    svc->corpus =
        std::make_shared<const fidaudit::Corpus>(fidaudit::LoadCorpus(corpus_dir));
    svc->service = std::make_unique<fidaudit::AnnotationService>(
        svc->corpus, annotations_dir);
    *out = svc.release();
  });
}

void fa_service_free(fa_service* service) {
  if (service == nullptr) return;
  if (service->http) service->http->Stop();
  delete service;
}

fa_status fa_service_request(fa_service* service, const char* method,
                             const char* target, const char* body,
                             int* out_status, char** out_body) {
  return Guard([&] {
    Require(service, "service");
    Require(method, "method");
    Require(target, "target");
    Require(out_status, "out_status");
    const fidaudit::ApiResponse r =
        service->service->Handle(method, target, body == nullptr ? "" : body);
    *out_status = r.status;
    Emit(out_body, r.body);
  });
}

fa_status fa_service_listen(fa_service* service, const char* host, int port,
                            int* out_port) {
  return Guard([&] {
    Require(service, "service");
    Require(host, "host");
    if (service->http) {
      throw Error(ErrorCode::kInvalidArgument, "service is already listening");
    }
    service->http = std::make_unique<fidaudit::HttpService>(*service->service);
    const int bound = service->http->Start(host, port);
    if (out_port != nullptr) *out_port = bound;
  });
}

fa_status fa_service_wait(fa_service* service) {
  return Guard([&] {
    Require(service, "service");
    if (!service->http) {
      throw Error(ErrorCode::kInvalidArgument, "service is not listening");
    }
    service->http->Wait();
  });
}

void fa_service_stop(fa_service* service) {
  if (service != nullptr && service->http) service->http->Stop();
}

}  // extern "C"
