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

#ifndef FIDAUDIT_BASELINE_WMD_HPP_
#define FIDAUDIT_BASELINE_WMD_HPP_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "baseline/document.hpp"
#include "baseline/embeddings.hpp"
#include "corpus/corpus.hpp"

namespace fidaudit {

// Exact Word Mover's Distance: the optimal transport cost between two
// normalized bags of words with Euclidean ground cost between the raw
// embedding vectors. Throws kEmptyAfterOov for an empty bag and
// kSolverFailure if the solver cannot certify a feasible plan.
double WordMoversDistance(const NBow& p, const NBow& q,
                          const EmbeddingTable& table);

enum class WmdVariant { kPlain, kPreprocessed };

const char* WmdVariantName(WmdVariant variant);
// Throws kInvalidArgument.
WmdVariant ParseWmdVariant(std::string_view name);

// Distance for one self-description and its linked representation. A
// missing distance carries the error name in `status`.
struct DistanceRecord {
  std::string doc_id;
  std::optional<double> distance;
  std::string status = "ok";
  std::string message;
};

struct DistanceSet {
  std::string method;  // e.g. "glove-twitter-200" or "...-preprocessed"
  std::vector<DistanceRecord> records;
};

// Per pair: serialize x, tokenize both texts, optionally drop d's tokens that
// also occur in x, build bags of words and solve. Failures are recorded per
// pair and never abort the batch. Work is spread over `threads` workers
// (0 picks the hardware concurrency).
DistanceSet ComputeDistances(const Corpus& corpus,
                             std::span<const std::string> doc_ids,
                             const EmbeddingTable& table, WmdVariant variant,
                             std::string method = {}, std::size_t threads = 0);

// "method,doc_id,distance,status" with an empty distance for failed pairs.
std::string DistancesToCsv(const DistanceSet& set);
std::vector<DistanceSet> ParseDistancesCsv(std::string_view text);
std::vector<DistanceSet> LoadDistances(const std::filesystem::path& path);

}  // namespace fidaudit

#endif  // FIDAUDIT_BASELINE_WMD_HPP_
