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

#ifndef FIDAUDIT_SERVICE_STORE_HPP_
#define FIDAUDIT_SERVICE_STORE_HPP_

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "annotation/annotation.hpp"
#include "annotation/registry.hpp"

namespace fidaudit {

// File-backed annotation persistence, one file per (doc, annotator) plus the
// shared label registry. Writes for one key are serialized and reach disk
// before they return.
class AnnotationStore {
 public:
  // Loads <dir>/labels.json when present; creates `dir` otherwise.
  AnnotationStore(std::filesystem::path dir,
                  std::shared_ptr<const FeatureSchema> schema);

  const std::filesystem::path& dir() const { return dir_; }
  const FeatureSchema& schema() const { return *schema_; }

  std::optional<AnnotationDoc> Get(std::string_view doc_id,
                                   std::string_view annotator_id) const;

  // Stores `doc` if doc.version equals the stored version (0 when nothing
  // is stored yet) and returns it with the version incremented.
  // Throws kVersionConflict, or the validation errors of ValidateAnnotation.
  AnnotationDoc Put(const AnnotationDoc& doc, std::size_t text_len);

  std::shared_ptr<const LabelRegistry> registry() const;

  // Mints (or finds) a new-subject label and persists the registry.
  // Returns the label and whether it was created by this call.
  std::pair<Label, bool> MintSubject(std::string_view name,
                                     std::string_view annotator_id);

 private:
  std::mutex& KeyMutex(const std::string& key) const;

  std::filesystem::path dir_;
  std::shared_ptr<const FeatureSchema> schema_;

  mutable std::mutex registry_mu_;
  std::shared_ptr<const LabelRegistry> registry_;

  mutable std::mutex keys_mu_;
  mutable std::map<std::string, std::unique_ptr<std::mutex>> key_mutexes_;
};

}  // namespace fidaudit

#endif  // FIDAUDIT_SERVICE_STORE_HPP_
