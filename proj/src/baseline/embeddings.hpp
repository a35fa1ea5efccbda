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

#ifndef FIDAUDIT_BASELINE_EMBEDDINGS_HPP_
#define FIDAUDIT_BASELINE_EMBEDDINGS_HPP_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace fidaudit {

// Token -> dense vector map. Immutable after loading; safe to share across
// threads.
class EmbeddingTable {
 public:
  EmbeddingTable() = default;
  EmbeddingTable(std::string name, std::size_t dim);

  // Inserts or replaces. Throws kDimensionMismatch, kParse (empty token or
  // non-finite component).
  void Set(std::string_view token, std::span<const double> vec);

  const std::string& name() const { return name_; }
  std::size_t dim() const { return dim_; }
  std::size_t size() const { return index_.size(); }

  bool Contains(std::string_view token) const;
  // Empty span for out-of-vocabulary tokens.
  std::span<const double> Find(std::string_view token) const;

  // Duplicate tokens seen while loading (last occurrence wins), as
  // "line N: duplicate token 'x'" messages.
  const std::vector<std::string>& warnings() const { return warnings_; }
  void AddWarning(std::string w) { warnings_.push_back(std::move(w)); }

  void Scale(double factor);

 private:
  std::string name_;
  std::size_t dim_ = 0;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<double> data_;
  std::vector<std::string> warnings_;
};

// Plain-text GloVe format: "token f1 ... fD" per line. A leading word2vec
// style "<count> <dim>" header line is skipped. The dimension is taken from
// the first vector line unless `expected_dim` is given. Throws kParse and
// kDimensionMismatch with line numbers.
EmbeddingTable ParseEmbeddings(std::string_view text, std::string name,
                               std::optional<std::size_t> expected_dim = {});
EmbeddingTable LoadEmbeddings(const std::filesystem::path& path,
                              std::optional<std::size_t> expected_dim = {});

}  // namespace fidaudit

#endif  // FIDAUDIT_BASELINE_EMBEDDINGS_HPP_
