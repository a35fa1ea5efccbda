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

#ifndef FIDAUDIT_SERVICE_SERVICE_HPP_
#define FIDAUDIT_SERVICE_SERVICE_HPP_

#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <thread>

#include "corpus/corpus.hpp"
#include "service/store.hpp"

namespace fidaudit {

// Closed set of API error codes.
inline constexpr const char* kApiErrorCodes[] = {
    "not_found",    "version_conflict", "validation_error",
    "name_collision", "bad_request",    "internal_error",
};

struct ApiResponse {
  int status = 200;
  std::string body;  // JSON
};

// Transport-independent request handling for the annotation API. Routes are
// listed in docs/api.md. Thread-safe.
class AnnotationService {
 public:
  AnnotationService(std::shared_ptr<const Corpus> corpus,
                    std::filesystem::path annotations_dir);

  // `target` is the raw request target; path segments are percent-decoded.
  ApiResponse Handle(std::string_view method, std::string_view target,
                     std::string_view body);

  const Corpus& corpus() const { return *corpus_; }
  AnnotationStore& store() { return store_; }

 private:
  ApiResponse ListDocuments() const;
  ApiResponse GetDocument(const std::string& doc_id) const;
  ApiResponse GetAnnotation(const std::string& doc_id,
                            const std::string& annotator_id) const;
  ApiResponse PutAnnotation(const std::string& doc_id,
                            const std::string& annotator_id,
                            std::string_view body);
  ApiResponse GetCounts(const std::string& doc_id,
                        const std::string& annotator_id) const;
  ApiResponse GetLabels() const;
  ApiResponse PostLabel(std::string_view body);

  const SelfDescription& RequireDocument(const std::string& doc_id) const;
  AnnotationDoc CurrentAnnotation(const std::string& doc_id,
                                  const std::string& annotator_id) const;

  std::shared_ptr<const Corpus> corpus_;
  AnnotationStore store_;
};

// Builds the JSON error envelope {"error": {"code", "message", "detail"?}}.
ApiResponse ApiError(int status, std::string_view code,
                     std::string_view message,
                     std::string_view detail_json = {});

// HTTP front end for AnnotationService.
class HttpService {
 public:
  explicit HttpService(AnnotationService& service);
  ~HttpService();
  HttpService(const HttpService&) = delete;
  HttpService& operator=(const HttpService&) = delete;

  // Binds and serves on a background thread. Port 0 picks a free port.
  // Returns the bound port. Throws kIo if binding fails.
  int Start(const std::string& host, int port);
  // Blocks the caller until Stop() is called from elsewhere.
  void Wait();
  void Stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace fidaudit

#endif  // FIDAUDIT_SERVICE_SERVICE_HPP_
