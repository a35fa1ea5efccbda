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

#include "baseline/embeddings.hpp"

#include <charconv>
#include <cmath>

#include "common/error.hpp"
#include "common/io.hpp"

namespace fidaudit {

EmbeddingTable::EmbeddingTable(std::string name, std::size_t dim)
    : name_(std::move(name)), dim_(dim) {}

void EmbeddingTable::Set(std::string_view token, std::span<const double> vec) {
  if (token.empty()) throw Error(ErrorCode::kParse, "empty embedding token");
  if (vec.size() != dim_) {
    throw Error(ErrorCode::kDimensionMismatch,
                "token '" + std::string(token) + "' has " +
                    std::to_string(vec.size()) + " components, expected " +
                    std::to_string(dim_));
  }
  for (double v : vec) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kParse,
                  "token '" + std::string(token) + "' has a non-finite component");
    }
  }
  const auto [it, inserted] = index_.try_emplace(std::string(token), size());
  if (inserted) {
    data_.insert(data_.end(), vec.begin(), vec.end());
  } else {
    std::copy(vec.begin(), vec.end(), data_.begin() + it->second * dim_);
  }
}

bool EmbeddingTable::Contains(std::string_view token) const {
  return index_.find(std::string(token)) != index_.end();
}

std::span<const double> EmbeddingTable::Find(std::string_view token) const {
  const auto it = index_.find(std::string(token));
  if (it == index_.end()) return {};
  return std::span<const double>(data_).subspan(it->second * dim_, dim_);
}

void EmbeddingTable::Scale(double factor) {
  for (double& v : data_) v *= factor;
}

namespace {

bool IsCountHeader(const std::vector<std::string_view>& fields) {
  if (fields.size() != 2) return false;
  for (std::string_view f : fields) {
    for (char c : f) {
      if (c < '0' || c > '9') return false;
    }
  }
  return true;
}

}  // namespace

EmbeddingTable ParseEmbeddings(std::string_view text, std::string name,
                               std::optional<std::size_t> expected_dim) {
  std::optional<EmbeddingTable> table;
  if (expected_dim) table.emplace(name, *expected_dim);
  std::vector<std::string_view> fields;
  std::vector<double> vec;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    fields.clear();
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
      const std::size_t start = i;
      while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
      if (i > start) fields.push_back(line.substr(start, i - start));
    }
    if (fields.empty()) continue;
    if (line_no == 1 && IsCountHeader(fields)) continue;

    const std::string where = "line " + std::to_string(line_no);
    if (fields.size() < 2) {
      throw Error(ErrorCode::kParse, where + ": token without vector");
    }
    vec.clear();
    for (std::size_t k = 1; k < fields.size(); ++k) {
      double v = 0;
      const std::string_view f = fields[k];
      const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (ec != std::errc() || ptr != f.data() + f.size() || !std::isfinite(v)) {
        throw Error(ErrorCode::kParse,
                    where + ": bad component \"" + std::string(f) + "\"");
      }
      vec.push_back(v);
    }
    if (!table) table.emplace(name, vec.size());
    if (vec.size() != table->dim()) {
      throw Error(ErrorCode::kDimensionMismatch,
                  where + ": " + std::to_string(vec.size()) +
                      " components, expected " + std::to_string(table->dim()));
    }
    const std::string_view token = fields[0];
    if (table->Contains(token)) {
      table->AddWarning(where + ": duplicate token '" + std::string(token) +
                        "', last occurrence wins");
    }
    table->Set(token, vec);
  }
  if (!table) {
    throw Error(ErrorCode::kParse, "embedding file has no vectors");
  }
  return std::move(*table);
}

EmbeddingTable LoadEmbeddings(const std::filesystem::path& path,
                              std::optional<std::size_t> expected_dim) {
  try {
    return ParseEmbeddings(ReadFile(path), path.stem().string(), expected_dim);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kIo) throw;
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

}  // namespace fidaudit
