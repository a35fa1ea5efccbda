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

#ifndef FIDAUDIT_BASELINE_DOCUMENT_HPP_
#define FIDAUDIT_BASELINE_DOCUMENT_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "baseline/embeddings.hpp"
#include "corpus/corpus.hpp"

namespace fidaudit {

// Lowercases and splits on every code point that is not a letter or digit.
// Order and multiplicity are preserved.
std::vector<std::string> Tokenize(std::string_view text);

// One "<display_name>: <decoded value>" line per feature, in schema order,
// joined with '\n'.
std::string SerializeRepresentation(const InputRepresentation& rep,
                                    const FeatureSchema& schema);

// Drops every occurrence in `d_tokens` of a token type that appears in
// `x_tokens`.
std::vector<std::string> RemoveSharedTokens(
    const std::vector<std::string>& d_tokens,
    const std::vector<std::string>& x_tokens);

// Normalized bag of words over in-vocabulary tokens, in first-occurrence
// order.
struct NBow {
  std::vector<std::string> tokens;
  std::vector<double> weights;
};

// Out-of-vocabulary tokens are dropped. Throws kEmptyAfterOov if nothing is
// left.
NBow MakeNBow(const std::vector<std::string>& tokens,
              const EmbeddingTable& table);

}  // namespace fidaudit

#endif  // FIDAUDIT_BASELINE_DOCUMENT_HPP_
