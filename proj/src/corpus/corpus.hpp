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

#ifndef FIDAUDIT_CORPUS_CORPUS_HPP_
#define FIDAUDIT_CORPUS_CORPUS_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "corpus/schema.hpp"

namespace fidaudit {

struct FeatureValue {
  std::string raw;      // code as stored in the source data
  std::string decoded;  // human-readable text

  bool operator==(const FeatureValue&) const = default;
};

// A person's fixed feature record. `values` is aligned with the schema's
// feature order.
struct InputRepresentation {
  std::string profile_id;
  std::vector<FeatureValue> values;

  const FeatureValue* Find(const FeatureSchema& schema,
                           std::string_view key) const;
};

struct SelfDescription {
  std::string doc_id;
  std::optional<std::string> profile_id;  // absent for free letters
  std::string generator_id;
  int variant_index = 1;
  std::string text;
  std::size_t char_count = 0;  // code points

  bool is_free() const { return !profile_id.has_value(); }
};

// Builds a validated representation from raw codes, decoding categorical
// values. Throws kUnknownCode / kParse / kSchemaMismatch.
InputRepresentation DecodeRepresentation(
    const FeatureSchema& schema, std::string profile_id,
    const std::vector<std::pair<std::string, std::string>>& raw_by_key,
    const std::string& where);

// Accepts raw GCD rows (whitespace separated, one column per feature plus an
// optional trailing outcome column) or JSON-lines records. Raw rows get
// profile ids "1", "2", ... by data row.
std::vector<InputRepresentation> ParseRepresentations(std::string_view text,
                                                      const FeatureSchema& schema);
std::vector<InputRepresentation> LoadRepresentations(
    const std::filesystem::path& path, const FeatureSchema& schema);
std::string SerializeRepresentations(
    std::span<const InputRepresentation> reps, const FeatureSchema& schema);

std::vector<SelfDescription> ParseDescriptions(std::string_view text);
std::vector<SelfDescription> LoadDescriptions(const std::filesystem::path& path);
std::string SerializeDescription(const SelfDescription& d);
std::string SerializeDescriptions(std::span<const SelfDescription> descs);

// Immutable, indexed corpus. Safe for concurrent reads.
class Corpus {
 public:
  // Throws kDuplicateId or kValidation (unresolvable profile id).
  Corpus(FeatureSchema schema, std::vector<InputRepresentation> reps,
         std::vector<SelfDescription> descs);

  const FeatureSchema& schema() const { return schema_; }
  std::span<const InputRepresentation> representations() const {
    return reps_;
  }
  std::span<const SelfDescription> descriptions() const { return descs_; }

  const InputRepresentation* FindRepresentation(std::string_view id) const;
  const SelfDescription* FindDescription(std::string_view doc_id) const;
  // Descriptions for one (profile, generator), ordered by variant_index.
  std::vector<const SelfDescription*> DescriptionsFor(
      std::string_view profile_id, std::string_view generator_id) const;

  // Sorted distinct generator ids.
  std::vector<std::string> Generators() const;

 private:
  FeatureSchema schema_;
  std::vector<InputRepresentation> reps_;
  std::vector<SelfDescription> descs_;
  std::unordered_map<std::string, std::size_t> rep_index_;
  std::unordered_map<std::string, std::size_t> desc_index_;
  std::map<std::pair<std::string, std::string>, std::vector<std::size_t>>
      pair_index_;
};

// Canonical corpus directory: schema.json, representations.jsonl,
// descriptions.jsonl.
inline constexpr char kSchemaFile[] = "schema.json";
inline constexpr char kRepresentationsFile[] = "representations.jsonl";
inline constexpr char kDescriptionsFile[] = "descriptions.jsonl";

void SaveCorpus(const Corpus& corpus, const std::filesystem::path& dir);
Corpus LoadCorpus(const std::filesystem::path& dir);

struct CorpusStats {
  std::size_t representations = 0;
  std::size_t descriptions = 0;
  std::size_t value_based = 0;
  std::size_t free = 0;
  std::size_t generators = 0;
  // (profile, generator) pairs and the variant count histogram.
  std::size_t pairs = 0;
  std::map<std::size_t, std::size_t> variants_per_pair;
};

CorpusStats ComputeStats(const Corpus& corpus);

// Stratified round-robin sample over generators: the number of documents
// drawn from any two generators differs by at most one unless a generator runs
// out of documents. Deterministic for a fixed seed. Throws kInsufficientData.
std::vector<std::string> SampleForAnnotation(const Corpus& corpus,
                                             std::size_t n, std::uint64_t seed,
                                             bool value_based_only = false);

}  // namespace fidaudit

#endif  // FIDAUDIT_CORPUS_CORPUS_HPP_
