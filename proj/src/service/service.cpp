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

#include "service/service.hpp"

#include <httplib.h>

#include <atomic>
#include <condition_variable>
#include <mutex>
#include <vector>

#include "common/error.hpp"
#include "fidelity/fidelity.hpp"
#include "json.hpp"

namespace fidaudit {

using json = nlohmann::ordered_json;

namespace {

int HexValue(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

// Splits the path part of a request target into percent-decoded segments.
// Returns false on a malformed escape.
bool SplitTarget(std::string_view target, std::vector<std::string>& out) {
  const std::size_t query = target.find('?');
  if (query != std::string_view::npos) target = target.substr(0, query);
  std::size_t pos = 0;
  while (pos < target.size()) {
    if (target[pos] == '/') {
      ++pos;
      continue;
    }
    std::size_t end = target.find('/', pos);
    if (end == std::string_view::npos) end = target.size();
    std::string segment;
    for (std::size_t i = pos; i < end; ++i) {
      if (target[i] != '%') {
        segment.push_back(target[i]);
        continue;
      }
      if (i + 2 >= end) return false;
      const int hi = HexValue(target[i + 1]);
      const int lo = HexValue(target[i + 2]);
      if (hi < 0 || lo < 0) return false;
      segment.push_back(static_cast<char>(hi * 16 + lo));
      i += 2;
    }
    out.push_back(std::move(segment));
    pos = end;
  }
  return true;
}

ApiResponse Json(int status, const json& body) {
  return {status, body.dump(2) + "\n"};
}

ApiResponse FromError(const Error& e) {
  switch (e.code()) {
    case ErrorCode::kNotFound:
      return ApiError(404, "not_found", e.what());
    case ErrorCode::kVersionConflict:
      return ApiError(409, "version_conflict", e.what());
    case ErrorCode::kNameCollision:
      return ApiError(409, "name_collision", e.what());
    case ErrorCode::kParse:
      return ApiError(400, "bad_request", e.what());
    case ErrorCode::kOutOfBounds:
    case ErrorCode::kEmptyLabelSet:
    case ErrorCode::kUnknownLabel:
    case ErrorCode::kSchemaMismatch:
    case ErrorCode::kValidation:
    case ErrorCode::kInvalidArgument:
      return ApiError(422, "validation_error", e.what(),
                      json{{"reason", ErrorCodeName(e.code())}}.dump());
    default:
      return ApiError(500, "internal_error", e.what());
  }
}

json CountsToJson(const ComponentCounts& c) {
  return json{{"additional_schema", c.additional_schema},
              {"new_subjects", c.new_subjects},
              {"aspects", c.aspects},
              {"additional_aspects", c.additional_aspects()},
              {"specializations", c.specializations},
              {"distinct_schema_labels", c.distinct_schema_labels},
              {"omitted_subjects", c.omitted_subjects},
              {"fidelity", c.fidelity}};
}

}  // namespace

ApiResponse ApiError(int status, std::string_view code,
                     std::string_view message, std::string_view detail_json) {
  json error{{"code", code}, {"message", message}};
  if (!detail_json.empty()) error["detail"] = json::parse(detail_json);
  return Json(status, json{{"error", std::move(error)}});
}

AnnotationService::AnnotationService(std::shared_ptr<const Corpus> corpus,
                                     std::filesystem::path annotations_dir)
    : corpus_(std::move(corpus)),
      store_(std::move(annotations_dir),
             std::shared_ptr<const FeatureSchema>(corpus_, &corpus_->schema())) {}

ApiResponse AnnotationService::Handle(std::string_view method,
                                      std::string_view target,
                                      std::string_view body) {
  std::vector<std::string> seg;
  if (!SplitTarget(target, seg)) {
    return ApiError(400, "bad_request", "malformed percent-encoding in path");
  }
  try {
    if (seg.size() >= 2 && seg[0] == "api") {
      const std::string& resource = seg[1];
      if (resource == "documents" && method == "GET") {
        if (seg.size() == 2) return ListDocuments();
        if (seg.size() == 3) return GetDocument(seg[2]);
      }
      if (resource == "annotations" && seg.size() == 4) {
        if (method == "GET") return GetAnnotation(seg[2], seg[3]);
        if (method == "PUT") return PutAnnotation(seg[2], seg[3], body);
      }
      if (resource == "annotations" && seg.size() == 5 &&
          seg[4] == "counts" && method == "GET") {
        return GetCounts(seg[2], seg[3]);
      }
      if (resource == "labels" && seg.size() == 2) {
        if (method == "GET") return GetLabels();
        if (method == "POST") return PostLabel(body);
      }
    }
    return ApiError(404, "not_found",
                    "no route for " + std::string(method) + " " +
                        std::string(target));
  } catch (const Error& e) {
    return FromError(e);
  } catch (const json::exception& e) {
    return ApiError(400, "bad_request", e.what());
  } catch (const std::exception& e) {
    return ApiError(500, "internal_error", e.what());
  }
}

const SelfDescription& AnnotationService::RequireDocument(
    const std::string& doc_id) const {
  const SelfDescription* d = corpus_->FindDescription(doc_id);
  if (d == nullptr) {
    throw Error(ErrorCode::kNotFound, "unknown document \"" + doc_id + "\"");
  }
  return *d;
}

AnnotationDoc AnnotationService::CurrentAnnotation(
    const std::string& doc_id, const std::string& annotator_id) const {
  RequireDocument(doc_id);
  if (annotator_id.empty()) {
    throw Error(ErrorCode::kValidation, "empty annotator id");
  }
  auto stored = store_.Get(doc_id, annotator_id);
  if (stored) return *stored;
  return AnnotationDoc{doc_id, annotator_id, 0, {}};
}

ApiResponse AnnotationService::ListDocuments() const {
  json docs = json::array();
  for (const SelfDescription& d : corpus_->descriptions()) {
    docs.push_back({{"doc_id", d.doc_id},
                    {"profile_id", d.profile_id ? json(*d.profile_id) : json()},
                    {"generator_id", d.generator_id},
                    {"variant_index", d.variant_index},
                    {"char_count", d.char_count}});
  }
  return Json(200, json{{"documents", std::move(docs)}});
}

ApiResponse AnnotationService::GetDocument(const std::string& doc_id) const {
  const SelfDescription& d = RequireDocument(doc_id);
  json representation;  // null for free letters
  if (d.profile_id) {
    const InputRepresentation* x = corpus_->FindRepresentation(*d.profile_id);
    json features = json::array();
    const FeatureSchema& schema = corpus_->schema();
    for (std::size_t i = 0; i < schema.size(); ++i) {
      const FeatureDef& f = schema.features()[i];
      features.push_back({{"key", f.key},
                          {"display_name", f.display_name},
                          {"label", schema.name() + "_" + f.key},
                          {"raw", x->values[i].raw},
                          {"decoded", x->values[i].decoded}});
    }
    representation = {{"profile_id", x->profile_id},
                      {"features", std::move(features)}};
  }
  return Json(200, json{{"doc_id", d.doc_id},
                        {"profile_id", d.profile_id ? json(*d.profile_id) : json()},
                        {"generator_id", d.generator_id},
                        {"variant_index", d.variant_index},
                        {"char_count", d.char_count},
                        {"text", d.text},
                        {"representation", std::move(representation)}});
}

ApiResponse AnnotationService::GetAnnotation(
    const std::string& doc_id, const std::string& annotator_id) const {
  const AnnotationDoc doc = CurrentAnnotation(doc_id, annotator_id);
  return {200, SerializeAnnotation(doc, corpus_->schema())};
}

ApiResponse AnnotationService::PutAnnotation(const std::string& doc_id,
                                             const std::string& annotator_id,
                                             std::string_view body) {
  const SelfDescription& d = RequireDocument(doc_id);
  const AnnotationDoc doc = ParseAnnotation(body, corpus_->schema());
  if (doc.doc_id != doc_id || doc.annotator_id != annotator_id) {
    throw Error(ErrorCode::kValidation,
                "payload identifies (" + doc.doc_id + ", " + doc.annotator_id +
                    ") but the path names (" + doc_id + ", " + annotator_id +
                    ")");
  }
  try {
    const AnnotationDoc stored = store_.Put(doc, d.char_count);
    return {200, SerializeAnnotation(stored, corpus_->schema())};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kVersionConflict) throw;
    const auto current = store_.Get(doc_id, annotator_id);
    return ApiError(
        409, "version_conflict", e.what(),
        json{{"stored_version", current ? current->version : 0}}.dump());
  }
}

ApiResponse AnnotationService::GetCounts(
    const std::string& doc_id, const std::string& annotator_id) const {
  const SelfDescription& d = RequireDocument(doc_id);
  const AnnotationDoc doc = CurrentAnnotation(doc_id, annotator_id);
  const ComponentCounts counts = CountComponents(doc, corpus_->schema());
  return Json(200, json{{"doc_id", doc_id},
                        {"annotator_id", annotator_id},
                        {"version", doc.version},
                        {"coverage", doc.coverage_ratio(d.char_count)},
                        {"counts", CountsToJson(counts)}});
}

ApiResponse AnnotationService::GetLabels() const {
  const auto registry = store_.registry();
  const FeatureSchema& schema = corpus_->schema();
  json schema_labels = json::array();
  for (const FeatureDef& f : schema.features()) {
    schema_labels.push_back({{"label", schema.name() + "_" + f.key},
                             {"key", f.key},
                             {"display_name", f.display_name}});
  }
  json subjects = json::array();
  for (const NewSubjectEntry& e : registry->new_subjects()) {
    subjects.push_back({{"label", std::string(kNewSubjectPrefix) + e.name},
                        {"name", e.name},
                        {"annotator_id", e.annotator_id},
                        {"created_at", e.created_at}});
  }
  return Json(200, json{{"schema", schema.name()},
                        {"schema_labels", std::move(schema_labels)},
                        {"new_subject_labels", std::move(subjects)},
                        {"fixed_labels", {kAspectLabel, kSpecializationLabel}}});
}

ApiResponse AnnotationService::PostLabel(std::string_view body) {
  const json request = json::parse(body);
  if (!request.is_object() || !request.contains("name") ||
      !request["name"].is_string()) {
    throw Error(ErrorCode::kValidation, "body needs a string field \"name\"");
  }
  std::string annotator;
  if (request.contains("annotator_id")) {
    annotator = request["annotator_id"].get<std::string>();
  }
  const auto [label, created] =
      store_.MintSubject(request["name"].get<std::string>(), annotator);
  return Json(created ? 201 : 200,
              json{{"label", RenderLabel(label, corpus_->schema())},
                   {"name", label.name},
                   {"created", created}});
}

struct HttpService::Impl {
  AnnotationService& service;
  httplib::Server server;
  std::thread thread;
  std::mutex mu;
  std::condition_variable stopped_cv;
  bool stopped = false;
};

HttpService::HttpService(AnnotationService& service)
    : impl_(std::make_unique<Impl>(service)) {
  auto handle = [this](const httplib::Request& req, httplib::Response& res) {
    const ApiResponse r =
        impl_->service.Handle(req.method, req.target, req.body);
    res.status = r.status;
    res.set_content(r.body, "application/json");
  };
  auto& s = impl_->server;
  s.Get(".*", handle);
  s.Put(".*", handle);
  s.Post(".*", handle);
  s.Delete(".*", handle);
  s.Patch(".*", handle);
}

HttpService::~HttpService() { Stop(); }

int HttpService::Start(const std::string& host, int port) {
  auto& s = impl_->server;
  const int bound = port == 0 ? s.bind_to_any_port(host)
                              : (s.bind_to_port(host, port) ? port : -1);
  if (bound < 0) {
    throw Error(ErrorCode::kIo,
                "cannot bind " + host + ":" + std::to_string(port));
  }
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return bound;
}

void HttpService::Wait() {
  std::unique_lock lock(impl_->mu);
  impl_->stopped_cv.wait(lock, [this] { return impl_->stopped; });
}

void HttpService::Stop() {
  if (!impl_) return;
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
  {
    std::lock_guard lock(impl_->mu);
    impl_->stopped = true;
  }
  impl_->stopped_cv.notify_all();
}

}  // namespace fidaudit
