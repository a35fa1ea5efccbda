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

#include "baseline/wmd.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <map>
#include <thread>

#include "baseline/transport.hpp"
#include "common/error.hpp"
#include "common/io.hpp"
#include "common/text.hpp"

namespace fidaudit {

double WordMoversDistance(const NBow& p, const NBow& q,
                          const EmbeddingTable& table) {
  if (p.tokens.empty() || q.tokens.empty()) {
    throw Error(ErrorCode::kEmptyAfterOov, "empty bag of words");
  }
  std::vector<std::span<const double>> pv;
  std::vector<std::span<const double>> qv;
  for (const std::string& t : p.tokens) pv.push_back(table.Find(t));
  for (const std::string& t : q.tokens) qv.push_back(table.Find(t));
  for (const auto& v : pv) {
    if (v.empty()) throw Error(ErrorCode::kEmptyAfterOov, "token not in table");
  }
  for (const auto& v : qv) {
    if (v.empty()) throw Error(ErrorCode::kEmptyAfterOov, "token not in table");
  }
  std::vector<double> cost(pv.size() * qv.size());
  for (std::size_t i = 0; i < pv.size(); ++i) {
    for (std::size_t j = 0; j < qv.size(); ++j) {
      double sq = 0;
      for (std::size_t k = 0; k < table.dim(); ++k) {
        const double diff = pv[i][k] - qv[j][k];
        sq += diff * diff;
      }
      cost[i * qv.size() + j] = std::sqrt(sq);
    }
  }
  return SolveTransport(p.weights, q.weights, cost).cost;
}

const char* WmdVariantName(WmdVariant variant) {
  return variant == WmdVariant::kPlain ? "plain" : "preprocessed";
}

WmdVariant ParseWmdVariant(std::string_view name) {
  if (name == "plain") return WmdVariant::kPlain;
  if (name == "preprocessed") return WmdVariant::kPreprocessed;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown variant \"" + std::string(name) +
                  "\" (expected plain|preprocessed)");
}

namespace {

DistanceRecord DistanceFor(const Corpus& corpus, const std::string& doc_id,
                           const EmbeddingTable& table, WmdVariant variant) {
  DistanceRecord record;
  record.doc_id = doc_id;
  try {
    const SelfDescription* d = corpus.FindDescription(doc_id);
    if (d == nullptr) {
      throw Error(ErrorCode::kNotFound, "unknown doc_id \"" + doc_id + "\"");
    }
    if (d->is_free()) {
      throw Error(ErrorCode::kMissingRepresentation,
                  "free letter \"" + doc_id + "\" has no representation");
    }
    const InputRepresentation* x = corpus.FindRepresentation(*d->profile_id);
    const auto x_tokens =
        Tokenize(SerializeRepresentation(*x, corpus.schema()));
    auto d_tokens = Tokenize(d->text);
    if (variant == WmdVariant::kPreprocessed) {
      d_tokens = RemoveSharedTokens(d_tokens, x_tokens);
    }
    const NBow x_bow = MakeNBow(x_tokens, table);
    const NBow d_bow = MakeNBow(d_tokens, table);
    record.distance = WordMoversDistance(d_bow, x_bow, table);
  } catch (const Error& e) {
    record.status = ErrorCodeName(e.code());
    record.message = e.what();
  }
  return record;
}

}  // namespace

DistanceSet ComputeDistances(const Corpus& corpus,
                             std::span<const std::string> doc_ids,
                             const EmbeddingTable& table, WmdVariant variant,
                             std::string method, std::size_t threads) {
  DistanceSet set;
  if (method.empty()) {
    set.method = table.name();
    if (variant == WmdVariant::kPreprocessed) set.method += "-preprocessed";
  } else {
    set.method = std::move(method);
  }
  set.records.resize(doc_ids.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max<std::size_t>(1, doc_ids.size()));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < doc_ids.size(); i = next++) {
      set.records[i] = DistanceFor(corpus, doc_ids[i], table, variant);
    }
  };
  std::vector<std::jthread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  return set;
}

std::string DistancesToCsv(const DistanceSet& set) {
  std::string out = "method,doc_id,distance,status\n";
  for (const DistanceRecord& r : set.records) {
    out += CsvField(set.method) + "," + CsvField(r.doc_id) + "," +
           (r.distance ? FormatDouble(*r.distance) : std::string()) + "," +
           CsvField(r.status) + "\n";
  }
  return out;
}

std::vector<DistanceSet> ParseDistancesCsv(std::string_view text) {
  std::vector<DistanceSet> sets;
  std::map<std::string, std::size_t> index;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (Trim(line).empty()) continue;
    const auto fields = ParseCsvLine(line);
    if (line_no == 1) {
      if (fields.size() != 4 || fields[0] != "method" || fields[1] != "doc_id") {
        throw Error(ErrorCode::kParse, "distances: unexpected header");
      }
      continue;
    }
    const std::string where = "distances line " + std::to_string(line_no);
    if (fields.size() != 4) {
      throw Error(ErrorCode::kParse, where + ": expected 4 fields");
    }
    const auto [it, inserted] = index.try_emplace(fields[0], sets.size());
    if (inserted) sets.push_back(DistanceSet{fields[0], {}});
    DistanceRecord record;
    record.doc_id = fields[1];
    record.status = fields[3];
    if (!fields[2].empty()) {
      double value = 0;
      const std::string& f = fields[2];
      const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), value);
      if (ec != std::errc() || ptr != f.data() + f.size() || !std::isfinite(value)) {
        throw Error(ErrorCode::kParse, where + ": bad distance \"" + f + "\"");
      }
      record.distance = value;
    }
    sets[it->second].records.push_back(std::move(record));
  }
  return sets;
}

std::vector<DistanceSet> LoadDistances(const std::filesystem::path& path) {
  try {
    return ParseDistancesCsv(ReadFile(path));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kIo) throw;
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

}  // namespace fidaudit
