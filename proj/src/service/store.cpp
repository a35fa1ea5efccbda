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

#include "service/store.hpp"

#include "common/error.hpp"
#include "common/io.hpp"

namespace fidaudit {

AnnotationStore::AnnotationStore(std::filesystem::path dir,
                                 std::shared_ptr<const FeatureSchema> schema)
    : dir_(std::move(dir)), schema_(std::move(schema)) {
  std::filesystem::create_directories(dir_);
  const auto registry_path = dir_ / kRegistryFile;
  if (std::filesystem::exists(registry_path)) {
    registry_ = std::make_shared<const LabelRegistry>(
        LabelRegistry::Parse(ReadFile(registry_path), schema_));
  } else {
    registry_ = std::make_shared<const LabelRegistry>(schema_);
  }
}

std::mutex& AnnotationStore::KeyMutex(const std::string& key) const {
  std::lock_guard lock(keys_mu_);
  auto& slot = key_mutexes_[key];
  if (!slot) slot = std::make_unique<std::mutex>();
  return *slot;
}

std::optional<AnnotationDoc> AnnotationStore::Get(
    std::string_view doc_id, std::string_view annotator_id) const {
  const auto path = AnnotationPath(dir_, doc_id, annotator_id);
  std::lock_guard lock(KeyMutex(path.string()));
  if (!std::filesystem::exists(path)) return std::nullopt;
  return ParseAnnotation(ReadFile(path), *schema_);
}

AnnotationDoc AnnotationStore::Put(const AnnotationDoc& doc,
                                   std::size_t text_len) {
  ValidateAnnotation(doc, text_len, registry().get());
  const auto path = AnnotationPath(dir_, doc.doc_id, doc.annotator_id);
  std::lock_guard lock(KeyMutex(path.string()));
  std::int64_t stored = 0;
  if (std::filesystem::exists(path)) {
    stored = ParseAnnotation(ReadFile(path), *schema_).version;
  }
  if (doc.version != stored) {
    throw Error(ErrorCode::kVersionConflict,
                "stale version " + std::to_string(doc.version) +
                    " for (" + doc.doc_id + ", " + doc.annotator_id +
                    "); stored version is " + std::to_string(stored));
  }
  AnnotationDoc next = doc;
  next.version = stored + 1;
  WriteFileAtomic(path, SerializeAnnotation(next, *schema_));
  return next;
}

std::shared_ptr<const LabelRegistry> AnnotationStore::registry() const {
  std::lock_guard lock(registry_mu_);
  return registry_;
}

std::pair<Label, bool> AnnotationStore::MintSubject(
    std::string_view name, std::string_view annotator_id) {
  std::lock_guard lock(registry_mu_);
  auto next = std::make_shared<const LabelRegistry>(
      MintNewSubject(*registry_, name, annotator_id, CurrentTimestamp()));
  Label label = Label::NewSubject(NormalizeSubjectName(name));
  const bool created =
      next->new_subjects().size() != registry_->new_subjects().size();
  if (created) {
    WriteFileAtomic(dir_ / kRegistryFile, next->Serialize());
    registry_ = std::move(next);
  }
  return {std::move(label), created};
}

}  // namespace fidaudit
