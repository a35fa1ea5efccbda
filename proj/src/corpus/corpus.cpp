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

#include "corpus/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <random>
#include <set>

#include "common/error.hpp"
#include "common/io.hpp"
#include "common/text.hpp"
#include "json.hpp"

namespace fidaudit {

using json = nlohmann::ordered_json;

const FeatureValue* InputRepresentation::Find(const FeatureSchema& schema,
                                              std::string_view key) const {
  const auto idx = schema.IndexOf(key);
  if (!idx || *idx >= values.size()) return nullptr;
  return &values[*idx];
}

namespace {

bool IsNumber(std::string_view s) {
  double value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(value);
}

std::string DecodeValue(const FeatureDef& def, const std::string& raw,
                        const std::string& where) {
  if (def.kind == FeatureKind::kCategorical) {
    const std::string* decoded = def.Decode(raw);
    if (decoded == nullptr) {
      throw Error(ErrorCode::kUnknownCode, where + ", key \"" + def.key +
                                               "\": unknown code \"" + raw +
                                               "\"");
    }
    return *decoded;
  }
  if (!IsNumber(raw)) {
    throw Error(ErrorCode::kParse, where + ", key \"" + def.key +
                                       "\": not a number: \"" + raw + "\"");
  }
  return def.unit.empty() ? raw : raw + " " + def.unit;
}

std::vector<std::string_view> SplitWhitespace(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

// Iterates non-blank lines, passing the 1-based line number.
template <typename Fn>
void ForEachLine(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    const std::string_view line = Trim(text.substr(start, end - start));
    if (!line.empty()) fn(line, line_no);
    start = end + 1;
  }
}

json ParseJsonLine(std::string_view line, const std::string& where) {
  try {
    json record = json::parse(line);
    if (!record.is_object()) {
      throw Error(ErrorCode::kParse, where + ": record must be an object");
    }
    return record;
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, where + ": " + e.what());
  }
}

}  // namespace

InputRepresentation DecodeRepresentation(
    const FeatureSchema& schema, std::string profile_id,
    const std::vector<std::pair<std::string, std::string>>& raw_by_key,
    const std::string& where) {
  if (profile_id.empty()) {
    throw Error(ErrorCode::kParse, where + ": empty profile_id");
  }
  InputRepresentation rep;
  rep.profile_id = std::move(profile_id);
  rep.values.resize(schema.size());
  std::vector<bool> seen(schema.size(), false);
  for (const auto& [key, raw] : raw_by_key) {
    const auto idx = schema.IndexOf(key);
    if (!idx) {
      throw Error(ErrorCode::kSchemaMismatch,
                  where + ": key \"" + key + "\" is not in the schema");
    }
    if (seen[*idx]) {
      throw Error(ErrorCode::kParse, where + ": key \"" + key + "\" repeated");
    }
    seen[*idx] = true;
    const FeatureDef& def = schema.features()[*idx];
    rep.values[*idx] = FeatureValue{raw, DecodeValue(def, raw, where)};
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) {
      throw Error(ErrorCode::kSchemaMismatch,
                  where + ": missing key \"" + schema.features()[i].key + "\"");
    }
  }
  return rep;
}

std::vector<InputRepresentation> ParseRepresentations(
    std::string_view text, const FeatureSchema& schema) {
  std::vector<InputRepresentation> reps;
  std::set<std::string> ids;
  std::size_t data_row = 0;
  ForEachLine(text, [&](std::string_view line, std::size_t line_no) {
    const std::string where = "line " + std::to_string(line_no);
    InputRepresentation rep;
    if (line.front() == '{') {
      const json record = ParseJsonLine(line, where);
      const auto id = record.find("profile_id");
      if (id == record.end() || !id->is_string()) {
        throw Error(ErrorCode::kParse, where + ": missing string profile_id");
      }
      const auto values = record.find("values");
      if (values == record.end() || !values->is_object()) {
        throw Error(ErrorCode::kParse, where + ": missing object \"values\"");
      }
      std::vector<std::pair<std::string, std::string>> raw_by_key;
      std::vector<std::pair<std::string, std::string>> given_decoded;
      for (const auto& [key, value] : values->items()) {
        if (value.is_string()) {
          raw_by_key.emplace_back(key, value.get<std::string>());
        } else if (value.is_object() && value.contains("raw") &&
                   value["raw"].is_string()) {
          raw_by_key.emplace_back(key, value["raw"].get<std::string>());
          if (value.contains("decoded")) {
            if (!value["decoded"].is_string()) {
              throw Error(ErrorCode::kParse,
                          where + ", key \"" + key + "\": decoded not a string");
            }
            given_decoded.emplace_back(key, value["decoded"].get<std::string>());
          }
        } else {
          throw Error(ErrorCode::kParse,
                      where + ", key \"" + key + "\": expected raw code");
        }
      }
      rep = DecodeRepresentation(schema, id->get<std::string>(), raw_by_key,
                                 where);
      for (const auto& [key, decoded] : given_decoded) {
        if (rep.Find(schema, key)->decoded != decoded) {
          throw Error(ErrorCode::kValidation,
                      where + ", key \"" + key +
                          "\": decoded text disagrees with the schema");
        }
      }
    } else {
      const auto columns = SplitWhitespace(line);
      if (columns.size() != schema.size() &&
          columns.size() != schema.size() + 1) {
        throw Error(ErrorCode::kParse,
                    where + ": expected " + std::to_string(schema.size()) +
                        " feature columns, got " +
                        std::to_string(columns.size()));
      }
      ++data_row;
      std::vector<std::pair<std::string, std::string>> raw_by_key;
      for (std::size_t i = 0; i < schema.size(); ++i) {
        raw_by_key.emplace_back(schema.features()[i].key,
                                std::string(columns[i]));
      }
      rep = DecodeRepresentation(schema, std::to_string(data_row), raw_by_key,
                                 "row " + std::to_string(data_row));
    }
    if (!ids.insert(rep.profile_id).second) {
      throw Error(ErrorCode::kDuplicateId,
                  where + ": duplicate profile_id \"" + rep.profile_id + "\"");
    }
    reps.push_back(std::move(rep));
  });
  return reps;
}

std::vector<InputRepresentation> LoadRepresentations(
    const std::filesystem::path& path, const FeatureSchema& schema) {
  try {
    return ParseRepresentations(ReadFile(path), schema);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kIo) throw;
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

std::string SerializeRepresentations(std::span<const InputRepresentation> reps,
                                     const FeatureSchema& schema) {
  std::string out;
  for (const InputRepresentation& rep : reps) {
    json record;
    record["profile_id"] = rep.profile_id;
    json values = json::object();
    for (std::size_t i = 0; i < schema.size(); ++i) {
      json v;
      v["raw"] = rep.values[i].raw;
      v["decoded"] = rep.values[i].decoded;
      values[schema.features()[i].key] = std::move(v);
    }
    record["values"] = std::move(values);
    out += record.dump();
    out.push_back('\n');
  }
  return out;
}

std::vector<SelfDescription> ParseDescriptions(std::string_view text) {
  std::vector<SelfDescription> descs;
  std::set<std::string> ids;
  ForEachLine(text, [&](std::string_view line, std::size_t line_no) {
    const std::string where = "line " + std::to_string(line_no);
    const json record = ParseJsonLine(line, where);
    const auto require_string = [&](const char* field) {
      const auto it = record.find(field);
      if (it == record.end() || !it->is_string()) {
        throw Error(ErrorCode::kParse,
                    where + ": missing string field \"" + field + "\"");
      }
      return it->get<std::string>();
    };
    SelfDescription d;
    d.doc_id = require_string("doc_id");
    if (d.doc_id.empty()) {
      throw Error(ErrorCode::kParse, where + ": empty doc_id");
    }
    const auto profile = record.find("profile_id");
    if (profile == record.end()) {
      throw Error(ErrorCode::kParse, where + ": missing field \"profile_id\"");
    }
    if (profile->is_string()) {
      d.profile_id = profile->get<std::string>();
    } else if (!profile->is_null()) {
      throw Error(ErrorCode::kParse, where + ": profile_id must be string or null");
    }
    d.generator_id = require_string("generator_id");
    const auto variant = record.find("variant_index");
    if (variant == record.end() || !variant->is_number_integer() ||
        variant->get<std::int64_t>() < 1) {
      throw Error(ErrorCode::kParse,
                  where + ": variant_index must be an integer >= 1");
    }
    d.variant_index = variant->get<int>();
    d.text = require_string("text");
    if (d.text.empty()) {
      throw Error(ErrorCode::kParse, where + ": empty text");
    }
    d.char_count = CodePointLength(d.text);
    if (!ids.insert(d.doc_id).second) {
      throw Error(ErrorCode::kDuplicateId,
                  where + ": duplicate doc_id \"" + d.doc_id + "\"");
    }
    descs.push_back(std::move(d));
  });
  return descs;
}

std::vector<SelfDescription> LoadDescriptions(const std::filesystem::path& path) {
  try {
    return ParseDescriptions(ReadFile(path));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kIo) throw;
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

std::string SerializeDescription(const SelfDescription& d) {
  json record;
  record["doc_id"] = d.doc_id;
  record["profile_id"] = d.profile_id ? json(*d.profile_id) : json(nullptr);
  record["generator_id"] = d.generator_id;
  record["variant_index"] = d.variant_index;
  record["text"] = d.text;
  return record.dump();
}

std::string SerializeDescriptions(std::span<const SelfDescription> descs) {
  std::string out;
  for (const SelfDescription& d : descs) {
    out += SerializeDescription(d);
    out.push_back('\n');
  }
  return out;
}

Corpus::Corpus(FeatureSchema schema, std::vector<InputRepresentation> reps,
               std::vector<SelfDescription> descs)
    : schema_(std::move(schema)),
      reps_(std::move(reps)),
      descs_(std::move(descs)) {
  for (std::size_t i = 0; i < reps_.size(); ++i) {
    if (reps_[i].values.size() != schema_.size()) {
      throw Error(ErrorCode::kSchemaMismatch,
                  "representation \"" + reps_[i].profile_id +
                      "\" does not match the schema");
    }
    if (!rep_index_.emplace(reps_[i].profile_id, i).second) {
      throw Error(ErrorCode::kDuplicateId,
                  "duplicate profile_id \"" + reps_[i].profile_id + "\"");
    }
  }
  for (std::size_t i = 0; i < descs_.size(); ++i) {
    const SelfDescription& d = descs_[i];
    if (!desc_index_.emplace(d.doc_id, i).second) {
      throw Error(ErrorCode::kDuplicateId,
                  "duplicate doc_id \"" + d.doc_id + "\"");
    }
    if (d.text.empty() || d.char_count != CodePointLength(d.text)) {
      throw Error(ErrorCode::kValidation,
                  "description \"" + d.doc_id + "\" has inconsistent text");
    }
    if (d.profile_id) {
      if (!rep_index_.contains(*d.profile_id)) {
        throw Error(ErrorCode::kValidation,
                    "description \"" + d.doc_id + "\" references unknown profile \"" +
                        *d.profile_id + "\"");
      }
      pair_index_[{*d.profile_id, d.generator_id}].push_back(i);
    }
  }
  for (auto& [key, indices] : pair_index_) {
    std::stable_sort(indices.begin(), indices.end(),
                     [&](std::size_t a, std::size_t b) {
                       return descs_[a].variant_index < descs_[b].variant_index;
                     });
  }
}

const InputRepresentation* Corpus::FindRepresentation(std::string_view id) const {
  const auto it = rep_index_.find(std::string(id));
  return it == rep_index_.end() ? nullptr : &reps_[it->second];
}

const SelfDescription* Corpus::FindDescription(std::string_view doc_id) const {
  const auto it = desc_index_.find(std::string(doc_id));
  return it == desc_index_.end() ? nullptr : &descs_[it->second];
}

std::vector<const SelfDescription*> Corpus::DescriptionsFor(
    std::string_view profile_id, std::string_view generator_id) const {
  std::vector<const SelfDescription*> out;
  const auto it = pair_index_.find(
      {std::string(profile_id), std::string(generator_id)});
  if (it != pair_index_.end()) {
    for (std::size_t i : it->second) out.push_back(&descs_[i]);
  }
  return out;
}

std::vector<std::string> Corpus::Generators() const {
  std::set<std::string> ids;
  for (const SelfDescription& d : descs_) ids.insert(d.generator_id);
  return {ids.begin(), ids.end()};
}

void SaveCorpus(const Corpus& corpus, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  WriteFileAtomic(dir / kSchemaFile, corpus.schema().Serialize());
  WriteFileAtomic(dir / kRepresentationsFile,
                  SerializeRepresentations(corpus.representations(),
                                           corpus.schema()));
  WriteFileAtomic(dir / kDescriptionsFile,
                  SerializeDescriptions(corpus.descriptions()));
}

Corpus LoadCorpus(const std::filesystem::path& dir) {
  FeatureSchema schema = LoadSchema(dir / kSchemaFile);
  auto reps = LoadRepresentations(dir / kRepresentationsFile, schema);
  auto descs = LoadDescriptions(dir / kDescriptionsFile);
  return Corpus(std::move(schema), std::move(reps), std::move(descs));
}

CorpusStats ComputeStats(const Corpus& corpus) {
  CorpusStats stats;
  stats.representations = corpus.representations().size();
  stats.descriptions = corpus.descriptions().size();
  std::map<std::pair<std::string, std::string>, std::size_t> pairs;
  for (const SelfDescription& d : corpus.descriptions()) {
    if (d.is_free()) {
      ++stats.free;
    } else {
      ++stats.value_based;
      ++pairs[{*d.profile_id, d.generator_id}];
    }
  }
  stats.generators = corpus.Generators().size();
  stats.pairs = pairs.size();
  for (const auto& [key, count] : pairs) ++stats.variants_per_pair[count];
  return stats;
}

namespace {

// Unbiased draw from [0, bound) using rejection on the raw engine output, so
// the sequence does not depend on the standard library's distributions.
std::uint64_t UniformBelow(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
  std::uint64_t draw;
  do {
    draw = rng();
  } while (draw >= limit);
  return draw % bound;
}

}  // namespace

std::vector<std::string> SampleForAnnotation(const Corpus& corpus,
                                             std::size_t n, std::uint64_t seed,
                                             bool value_based_only) {
  std::map<std::string, std::vector<const SelfDescription*>> by_generator;
  std::size_t available = 0;
  for (const SelfDescription& d : corpus.descriptions()) {
    if (value_based_only && d.is_free()) continue;
    by_generator[d.generator_id].push_back(&d);
    ++available;
  }
  if (n > available) {
    throw Error(ErrorCode::kInsufficientData,
                "requested " + std::to_string(n) + " documents, only " +
                    std::to_string(available) + " available");
  }
  std::mt19937_64 rng(seed);
  std::vector<std::vector<const SelfDescription*>> pools;
  for (auto& [generator, docs] : by_generator) {
    std::sort(docs.begin(), docs.end(),
              [](const SelfDescription* a, const SelfDescription* b) {
                return a->doc_id < b->doc_id;
              });
    for (std::size_t i = docs.size(); i > 1; --i) {
      std::swap(docs[i - 1], docs[UniformBelow(rng, i)]);
    }
    pools.push_back(docs);
  }
  std::vector<std::string> out;
  out.reserve(n);
  std::vector<std::size_t> next(pools.size(), 0);
  while (out.size() < n) {
    for (std::size_t g = 0; g < pools.size() && out.size() < n; ++g) {
      if (next[g] < pools[g].size()) out.push_back(pools[g][next[g]++]->doc_id);
    }
  }
  return out;
}

}  // namespace fidaudit
