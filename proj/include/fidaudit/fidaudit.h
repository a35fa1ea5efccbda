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

/*
 * fidaudit C API.
 *
 * Every fallible call returns an fa_status. On failure a one-line message is
 * available from fa_last_error() on the calling thread until the next call.
 * Strings returned through `char** out` parameters are heap allocated and
 * must be released with fa_free_string(). Handles are opaque and released
 * with their matching *_free function; passing NULL to a free function is a
 * no-op.
 */
#ifndef FIDAUDIT_FIDAUDIT_H_
#define FIDAUDIT_FIDAUDIT_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define FA_API __declspec(dllexport)
#else
#define FA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fa_status {
  FA_OK = 0,
  FA_E_PARSE = 1,
  FA_E_SCHEMA = 2,
  FA_E_UNKNOWN_CODE = 3,
  FA_E_DUPLICATE_ID = 4,
  FA_E_INSUFFICIENT_DATA = 5,
  FA_E_OUT_OF_BOUNDS = 6,
  FA_E_UNKNOWN_LABEL = 7,
  FA_E_EMPTY_LABEL_SET = 8,
  FA_E_NAME_COLLISION = 9,
  FA_E_UNKNOWN_MISMATCH = 10,
  FA_E_SCHEMA_MISMATCH = 11,
  FA_E_EMPTY_INPUT = 12,
  FA_E_DOC_MISMATCH = 13,
  FA_E_MIXED_MODES = 14,
  FA_E_DIMENSION_MISMATCH = 15,
  FA_E_EMPTY_AFTER_OOV = 16,
  FA_E_SOLVER_FAILURE = 17,
  FA_E_LENGTH_MISMATCH = 18,
  FA_E_ZERO_VARIANCE = 19,
  FA_E_TOO_FEW_POINTS = 20,
  FA_E_INSUFFICIENT_OVERLAP = 21,
  FA_E_PROVIDER = 22,
  FA_E_BUDGET_EXCEEDED = 23,
  FA_E_MISSING_REPRESENTATION = 24,
  FA_E_VERSION_CONFLICT = 25,
  FA_E_NOT_FOUND = 26,
  FA_E_VALIDATION = 27,
  FA_E_IO = 28,
  FA_E_INVALID_ARGUMENT = 29,
  FA_E_INTERNAL = 30
} fa_status;

/* Stable name of a status, e.g. "ParseError"; "Ok" for FA_OK. */
FA_API const char* fa_status_name(fa_status status);
FA_API const char* fa_last_error(void);
FA_API void fa_free_string(char* s);
FA_API const char* fa_version(void);

/* ---- schema ---------------------------------------------------------- */

typedef struct fa_schema fa_schema;

FA_API fa_status fa_schema_load(const char* path, fa_schema** out);
FA_API void fa_schema_free(fa_schema* schema);
FA_API size_t fa_schema_size(const fa_schema* schema);
/* Canonical JSON text. */
FA_API fa_status fa_schema_to_json(const fa_schema* schema, char** out);

/* ---- corpus ---------------------------------------------------------- */

typedef struct fa_corpus fa_corpus;

/* Builds a corpus from a schema file, a representation file (raw GCD rows
 * or JSON lines) and an optional descriptions file (NULL for none). */
FA_API fa_status fa_corpus_ingest(const char* schema_path,
                                  const char* representations_path,
                                  const char* descriptions_path,
                                  fa_corpus** out);
FA_API fa_status fa_corpus_load(const char* dir, fa_corpus** out);
FA_API fa_status fa_corpus_save(const fa_corpus* corpus, const char* dir);
FA_API void fa_corpus_free(fa_corpus* corpus);
FA_API size_t fa_corpus_num_descriptions(const fa_corpus* corpus);
FA_API size_t fa_corpus_num_representations(const fa_corpus* corpus);
/* {"representations", "descriptions", "value_based", "free", "generators",
 *  "pairs", "variants_per_pair": {"<k>": count}} */
FA_API fa_status fa_corpus_stats_json(const fa_corpus* corpus, char** out);
/* Newline-separated doc ids of a stratified sample. */
FA_API fa_status fa_corpus_sample(const fa_corpus* corpus, size_t n,
                                  uint64_t seed, int value_based_only,
                                  char** out);

/* Checks every annotation under `annotations_dir` against the corpus: known
 * doc ids, offsets, labels. Documents covered below `coverage_threshold`
 * are reported as warnings. Output: {"annotations", "documents",
 * "warnings": [..]}. */
FA_API fa_status fa_validate_annotations(const fa_corpus* corpus,
                                         const char* annotations_dir,
                                         double coverage_threshold,
                                         char** out_json);

/* ---- fidelity -------------------------------------------------------- */

/* Counts, averages and writes report.json, per_annotation.csv,
 * per_document.csv and summary.csv into `out_dir`. `label` names the run
 * (may be NULL). `out_summary_json` (may be NULL) receives the mean and
 * std components. */
FA_API fa_status fa_fidelity_run(const fa_corpus* corpus,
                                 const char* annotations_dir,
                                 const char* label, const char* out_dir,
                                 char** out_summary_json);
/* Ranks two or more saved reports by mean fidelity; CSV output. */
FA_API fa_status fa_fidelity_compare(const char* const* report_paths,
                                     size_t count, char** out_csv);

/* ---- agreement ------------------------------------------------------- */

typedef enum fa_match_mode {
  FA_MATCH_STRICT = 1,
  FA_MATCH_RELAXED = 2,
  FA_MATCH_BOTH = 3
} fa_match_mode;

/* Per-document and micro-averaged span F1 between two annotators, as CSV
 * (mode, scope, doc_id, tp, a_total, b_total, precision, recall, f1). */
FA_API fa_status fa_agreement_run(const fa_schema* schema,
                                  const char* annotations_dir,
                                  const char* annotator_a,
                                  const char* annotator_b, fa_match_mode mode,
                                  char** out_csv);

/* ---- word mover's distance ------------------------------------------ */

typedef struct fa_embeddings fa_embeddings;

/* Word-vector text file; `expected_dim` 0 accepts the file's dimension. */
FA_API fa_status fa_embeddings_load(const char* path, size_t expected_dim,
                                    fa_embeddings** out);
FA_API void fa_embeddings_free(fa_embeddings* table);
FA_API size_t fa_embeddings_dim(const fa_embeddings* table);
FA_API size_t fa_embeddings_size(const fa_embeddings* table);

typedef enum fa_wmd_variant {
  FA_WMD_PLAIN = 1,
  FA_WMD_PREPROCESSED = 2
} fa_wmd_variant;

/* Distance between two texts after tokenization. */
FA_API fa_status fa_wmd_texts(const fa_embeddings* table, const char* text_a,
                              const char* text_b, double* out);
/* Distances between each listed description and its representation, as
 * CSV (method, doc_id, distance, status). `doc_ids` NULL with `count` 0
 * takes every value-based description. `method` may be NULL. `threads` 0
 * uses all cores. Per-document failures appear in the status column. */
FA_API fa_status fa_wmd_run(const fa_corpus* corpus,
                            const fa_embeddings* table,
                            const char* const* doc_ids, size_t count,
                            fa_wmd_variant variant, const char* method,
                            size_t threads, char** out_csv);

/* ---- statistics ------------------------------------------------------ */

FA_API fa_status fa_pearson(const double* xs, const double* ys, size_t n,
                            double* out);
/* Correlates each distance file's methods against a saved fidelity report
 * (directory or report.json). CSV output, one row per method. */
FA_API fa_status fa_correlate(const char* const* distance_paths,
                              size_t count, const char* fidelity_report,
                              char** out_csv);

/* ---- generation ------------------------------------------------------ */

typedef struct fa_generate_options {
  const char* const* models;
  size_t num_models;
  int variants;          /* letters per (profile, model); >= 1 */
  int free_mode;         /* nonzero: prompts without representation values */
  int dry_run;           /* nonzero: offline placeholder client */
  double temperature;    /* negative: omit */
  double top_p;          /* negative: omit */
  size_t request_cap;    /* 0: unlimited */
  size_t concurrency;    /* 0: default (4) */
  int max_attempts;      /* 0: default (5) */
  const char* persona;   /* NULL or empty: neutral */
  int verbose;           /* nonzero: one stderr line per attempt */
} fa_generate_options;

FA_API void fa_generate_options_init(fa_generate_options* options);

/* Writes a corpus directory (schema, representations, descriptions) plus
 * ledger.jsonl into `out_dir`; re-running resumes from the ledger. Endpoint
 * and key come from FIDAUDIT_API_BASE / FIDAUDIT_API_KEY unless dry_run.
 * `representations_path` may be NULL in free mode. */
FA_API fa_status fa_generate(const char* schema_path,
                             const char* representations_path,
                             const fa_generate_options* options,
                             const char* out_dir, char** out_summary_json);
/* The prompt for one profile (or the free prompt when profile_id is NULL). */
FA_API fa_status fa_build_prompt(const char* schema_path,
                                 const char* representations_path,
                                 const char* profile_id, const char* persona,
                                 char** out);

/* ---- annotation service ---------------------------------------------- */

typedef struct fa_service fa_service;

FA_API fa_status fa_service_open(const char* corpus_dir,
                                 const char* annotations_dir,
                                 fa_service** out);
FA_API void fa_service_free(fa_service* service);
/* In-process request: same routing and payloads as the HTTP front end.
 * Protocol-level errors are returned in `out_status`/`out_body`, not as a
 * failing fa_status. */
FA_API fa_status fa_service_request(fa_service* service, const char* method,
                                    const char* target, const char* body,
                                    int* out_status, char** out_body);
/* Starts HTTP on host:port (port 0 picks one) and returns the bound port. */
FA_API fa_status fa_service_listen(fa_service* service, const char* host,
                                   int port, int* out_port);
/* Blocks until fa_service_stop() is called. */
FA_API fa_status fa_service_wait(fa_service* service);
FA_API void fa_service_stop(fa_service* service);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif  /* FIDAUDIT_FIDAUDIT_H_ */
