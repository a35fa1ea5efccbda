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

#include "baseline/document.hpp"

#include <unordered_map>
#include <unordered_set>

#include "common/error.hpp"
#include "common/text.hpp"

namespace fidaudit {

std::vector<std::string> Tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::u32string current;
  for (char32_t c : DecodeUtf8(text)) {
    if (IsLetterOrDigit(c)) {
      current.push_back(ToLower(c));
    } else if (!current.empty()) {
      tokens.push_back(EncodeUtf8(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(EncodeUtf8(current));
  return tokens;
}

std::string SerializeRepresentation(const InputRepresentation& rep,
                                    const FeatureSchema& schema) {
  std::string out;
  for (std::size_t i = 0; i < schema.size(); ++i) {
    if (i > 0) out.push_back('\n');
    out += schema.features()[i].display_name;
    out += ": ";
    out += rep.values.at(i).decoded;
  }
  return out;
}

std::vector<std::string> RemoveSharedTokens(
    const std::vector<std::string>& d_tokens,
    const std::vector<std::string>& x_tokens) {
  const std::unordered_set<std::string> shared(x_tokens.begin(), x_tokens.end());
  std::vector<std::string> out;
  for (const std::string& t : d_tokens) {
    if (!shared.contains(t)) out.push_back(t);
  }
  return out;
}

NBow MakeNBow(const std::vector<std::string>& tokens,
              const EmbeddingTable& table) {
  NBow bow;
  std::unordered_map<std::string, std::size_t> slot;
  std::vector<std::size_t> counts;
  std::size_t total = 0;
  for (const std::string& t : tokens) {
    if (!table.Contains(t)) continue;
    const auto [it, inserted] = slot.try_emplace(t, bow.tokens.size());
    if (inserted) {
      bow.tokens.push_back(t);
      counts.push_back(0);
    }
    ++counts[it->second];
    ++total;
  }
  if (total == 0) {
    throw Error(ErrorCode::kEmptyAfterOov,
                "no in-vocabulary tokens among " + std::to_string(tokens.size()));
  }
  bow.weights.reserve(counts.size());
  for (std::size_t c : counts) {
    bow.weights.push_back(static_cast<double>(c) / static_cast<double>(total));
  }
  return bow;
}

}  // namespace fidaudit
