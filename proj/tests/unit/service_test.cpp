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

#include <gtest/gtest.h>
#include <httplib.h>
#include <json.hpp>

#include <thread>

#include "common/error.hpp"
#include "common/text.hpp"
#include "service/service.hpp"
#include "support/test_util.hpp"

namespace fidaudit {
namespace {

using nlohmann::json;

class ServiceTest : public ::testing::Test {
 protected:
  ServiceTest()
      : corpus_(std::make_shared<const Corpus>(testutil::DeskCorpus())),
        service_(corpus_, dir_.path()) {}

  json Call(std::string_view method, std::string_view target,
            std::string_view body = {}, int expected = 200) {
    const ApiResponse r = service_.Handle(method, target, body);
    EXPECT_EQ(r.status, expected) << method << " " << target << ": " << r.body;
    return json::parse(r.body);
  }

  static std::string Annotation(const std::string& doc, const std::string& ann,
                                std::int64_t version, const json& spans) {
    return json{{"doc_id", doc},
                {"annotator_id", ann},
                {"version", version},
                {"spans", spans}}
        .dump();
  }

  testutil::TempDir dir_;
  std::shared_ptr<const Corpus> corpus_;
  AnnotationService service_;
};

TEST_F(ServiceTest, ListsAndFetchesDocuments) {
  const json list = Call("GET", "/api/documents");
  EXPECT_EQ(list["documents"].size(), 20u);
  const json doc = Call("GET", "/api/documents/model-a_1_1");
  EXPECT_EQ(doc["generator_id"], "model-a");
  EXPECT_EQ(doc["representation"]["features"].size(), 20u);
  EXPECT_EQ(doc["representation"]["features"][0]["label"], "GCD_checking_status");
  const json missing = Call("GET", "/api/documents/nope", {}, 404);
  EXPECT_EQ(missing["error"]["code"], "not_found");
  Call("GET", "/api/nothing", {}, 404);
}

TEST_F(ServiceTest, SaveReloadRoundTrip) {
  const json empty = Call("GET", "/api/annotations/model-a_1_1/ann1");
  EXPECT_EQ(empty["version"], 0);
  const json spans = {{{"start", 0}, {"end", 15}, {"labels", {"aspect"}}},
                      {{"start", 16}, {"end", 20}, {"labels", {"GCD_age"}}}};
  const json saved = Call("PUT", "/api/annotations/model-a_1_1/ann1",
                          Annotation("model-a_1_1", "ann1", 0, spans));
  EXPECT_EQ(saved["version"], 1);
  const json loaded = Call("GET", "/api/annotations/model-a_1_1/ann1");
  EXPECT_EQ(loaded, saved);
  EXPECT_EQ(loaded["spans"], spans);
  const json counts = Call("GET", "/api/annotations/model-a_1_1/ann1/counts");
  EXPECT_EQ(counts["version"], 1);
  EXPECT_EQ(counts["counts"]["aspects"], 1);
  EXPECT_EQ(counts["counts"]["fidelity"], 1);
  EXPECT_GT(counts["coverage"].get<double>(), 0.0);
}

TEST_F(ServiceTest, MultibyteOffsetsRoundTrip) {
  const SelfDescription* d = corpus_->FindDescription("model-b_1_2");
  ASSERT_NE(d, nullptr);
  const auto cafe = d->text.find("café");
  ASSERT_NE(cafe, std::string::npos) << "fixture letter lost its accent";
  const auto start = static_cast<std::int64_t>(
      CodePointLength(std::string_view(d->text).substr(0, cafe)));
  const json spans = {{{"start", start}, {"end", start + 4}, {"labels", {"aspect"}}}};
  Call("PUT", "/api/annotations/model-b_1_2/ann1",
       Annotation("model-b_1_2", "ann1", 0, spans));
  const json loaded = Call("GET", "/api/annotations/model-b_1_2/ann1");
  const auto s = loaded["spans"][0]["start"].get<std::size_t>();
  const auto e = loaded["spans"][0]["end"].get<std::size_t>();
  const std::size_t b0 = ByteOffsetOf(d->text, s);
  EXPECT_EQ(d->text.substr(b0, ByteOffsetOf(d->text, e) - b0), "café");
}

TEST_F(ServiceTest, StalePutIsRejectedWithoutChange) {
  const json spans = {{{"start", 0}, {"end", 5}, {"labels", {"aspect"}}}};
  Call("PUT", "/api/annotations/model-a_1_1/ann1",
       Annotation("model-a_1_1", "ann1", 0, spans));
  const json other = {{{"start", 1}, {"end", 3}, {"labels", {"specialization"}}}};
  const json conflict =
      Call("PUT", "/api/annotations/model-a_1_1/ann1",
           Annotation("model-a_1_1", "ann1", 0, other), 409);
  EXPECT_EQ(conflict["error"]["code"], "version_conflict");
  EXPECT_EQ(conflict["error"]["detail"]["stored_version"], 1);
  EXPECT_EQ(Call("GET", "/api/annotations/model-a_1_1/ann1")["spans"], spans);
}

TEST_F(ServiceTest, ValidationErrors) {
  const auto put = [&](const json& spans, const std::string& ann = "ann1") {
    return Call("PUT", "/api/annotations/model-a_1_1/ann1",
                Annotation("model-a_1_1", ann, 0, spans), 422);
  };
  EXPECT_EQ(put({{{"start", 0}, {"end", 100000}, {"labels", {"aspect"}}}})
                ["error"]["code"],
            "validation_error");
  put({{{"start", 0}, {"end", 4}, {"labels", json::array()}}});
  put({{{"start", 0}, {"end", 4}, {"labels", {"new_unminted"}}}});
  put({{{"start", 0}, {"end", 4}, {"labels", {"aspect"}}}}, "someone_else");
  Call("PUT", "/api/annotations/model-a_1_1/ann1", "{not json", 400);
  Call("GET", "/api/annotations/model-a_1_1/ann1/counts");
}

TEST_F(ServiceTest, LabelRegistry) {
  const json labels = Call("GET", "/api/labels");
  EXPECT_EQ(labels["schema_labels"].size(), 20u);
  EXPECT_EQ(labels["fixed_labels"], json({"aspect", "specialization"}));
  const json minted = Call("POST", "/api/labels",
                           R"({"name":"Pet","annotator_id":"ann1"})", 201);
  EXPECT_EQ(minted["label"], "new_pet");
  EXPECT_EQ(Call("POST", "/api/labels", R"({"name":"pet"})")["created"], false);
  EXPECT_EQ(Call("POST", "/api/labels", R"({"name":"age"})", 409)["error"]["code"],
            "name_collision");
  Call("POST", "/api/labels", R"({"nom":"x"})", 422);

  // Visible to a later session over the same directory.
  AnnotationService second(corpus_, dir_.path());
  const ApiResponse r = second.Handle("GET", "/api/labels", {});
  EXPECT_EQ(json::parse(r.body)["new_subject_labels"][0]["label"], "new_pet");
  Call("PUT", "/api/annotations/model-a_1_1/ann2",
       Annotation("model-a_1_1", "ann2", 0,
                  {{{"start", 0}, {"end", 4}, {"labels", {"new_pet"}}}}));
}

TEST_F(ServiceTest, ConcurrentPutsLoseNoUpdates) {
  constexpr int kClients = 6;
  constexpr int kEach = 15;
  std::vector<std::jthread> clients;
  for (int c = 0; c < kClients; ++c) {
    clients.emplace_back([this, c] {
      for (int k = 0; k < kEach;) {
        const ApiResponse got =
            service_.Handle("GET", "/api/annotations/model-a_2_1/shared", {});
        json doc = json::parse(got.body);
        const std::int64_t pos = c * kEach + k;
        doc["spans"].push_back(
            {{"start", pos}, {"end", pos + 1}, {"labels", {"aspect"}}});
        const ApiResponse put = service_.Handle(
            "PUT", "/api/annotations/model-a_2_1/shared", doc.dump());
        if (put.status == 200) {
          ++k;
        } else {
          ASSERT_EQ(put.status, 409) << put.body;
        }
      }
    });
  }
  clients.clear();
  const json final_doc = Call("GET", "/api/annotations/model-a_2_1/shared");
  EXPECT_EQ(final_doc["version"], kClients * kEach);
  EXPECT_EQ(final_doc["spans"].size(), static_cast<std::size_t>(kClients * kEach));
}

TEST_F(ServiceTest, PercentEncodedSegments) {
  Call("GET", "/api/annotations/model-a_1_1/ann%201");
  Call("GET", "/api/documents/model-a_1_1%", {}, 400);
}

TEST_F(ServiceTest, ServesOverHttp) {
  HttpService http(service_);
  const int port = http.Start("127.0.0.1", 0);
  ASSERT_GT(port, 0);
  httplib::Client client("127.0.0.1", port);
  auto res = client.Get("/api/labels");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(json::parse(res->body)["schema"], "GCD");
  res = client.Put("/api/annotations/model-a_1_1/web",
                   Annotation("model-a_1_1", "web", 0,
                              {{{"start", 2}, {"end", 6}, {"labels", {"aspect"}}}}),
                   "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(json::parse(res->body)["version"], 1);
  http.Stop();
}

}  // namespace
}  // namespace fidaudit
