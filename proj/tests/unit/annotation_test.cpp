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

#include <algorithm>
#include <random>

#include "annotation/annotation.hpp"
#include "annotation/label.hpp"
#include "annotation/registry.hpp"
#include "annotation/taxonomy.hpp"
#include "common/error.hpp"
#include "common/io.hpp"
#include "oracles/stats_oracle.hpp"
#include "support/test_util.hpp"

namespace fidaudit {
namespace {

using testutil::GcdSchema;

LabelRegistry Registry() { return LabelRegistry(GcdSchema()); }

TEST(LabelTest, RenderAndParse) {
  const FeatureSchema& s = *GcdSchema();
  EXPECT_EQ(RenderLabel(Label::SchemaFeature("purpose"), s), "GCD_purpose");
  EXPECT_EQ(RenderLabel(Label::NewSubject("pet"), s), "new_pet");
  EXPECT_EQ(RenderLabel(Label::Aspect(), s), "aspect");
  EXPECT_EQ(ParseLabel("GCD_credit_amount", s),
            Label::SchemaFeature("credit_amount"));
  EXPECT_EQ(ParseLabel("specialization", s), Label::Specialization());
  EXPECT_FA_ERROR(ParseLabel("GCD_salary", s), kUnknownLabel);
  EXPECT_FA_ERROR(ParseLabel("new_Bad Name", s), kUnknownLabel);
  EXPECT_FA_ERROR(ParseLabel("colour", s), kUnknownLabel);
}

TEST(LabelTest, NormalizeSubjectName) {
  EXPECT_EQ(NormalizeSubjectName("Side Income"), "side_income");
  EXPECT_EQ(NormalizeSubjectName("  --Pet!! "), "pet");
  EXPECT_EQ(NormalizeSubjectName("Größe"), "größe");
  EXPECT_EQ(NormalizeSubjectName("!!!"), "");
}

TEST(RegistryTest, MintIsIdempotent) {
  LabelRegistry r = MintNewSubject(Registry(), "pet", "a1", "t0");
  r = MintNewSubject(r, "pet", "a2", "t1");
  ASSERT_EQ(r.new_subjects().size(), 1u);
  EXPECT_EQ(r.new_subjects()[0].annotator_id, "a1");
}

TEST(RegistryTest, MintNormalizesAndRejectsCollisions) {
  const LabelRegistry r = MintNewSubject(Registry(), "Side Income", "a", "t");
  EXPECT_TRUE(r.HasSubject("side_income"));
  EXPECT_EQ(RenderLabel(Label::NewSubject("side_income"), r.schema()),
            "new_side_income");
  EXPECT_FA_ERROR(MintNewSubject(Registry(), "purpose", "a", "t"),
                  kNameCollision);
  EXPECT_FA_ERROR(MintNewSubject(Registry(), "Purpose", "a", "t"),
                  kNameCollision);
  EXPECT_FA_ERROR(MintNewSubject(Registry(), " ", "a", "t"), kInvalidArgument);
}

TEST(RegistryTest, SerializeRoundTrip) {
  LabelRegistry r = MintNewSubject(Registry(), "pet", "a", "2026-01-01T00:00:00Z");
  r = MintNewSubject(r, "hobby", "b", "2026-01-02T00:00:00Z");
  const auto again = LabelRegistry::Parse(r.Serialize(), GcdSchema());
  EXPECT_EQ(again.new_subjects(), r.new_subjects());
  EXPECT_EQ(again.Serialize(), r.Serialize());
  EXPECT_EQ(r.SchemaLabels().size(), 20u);
}

// The subject set only grows over a sequence of mint operations.
TEST(RegistryTest, Monotonic) {
  std::mt19937 rng(3);
  const std::vector<std::string> names = {"pet", "purpose", "Pet", "hobby",
                                          "side income", "age", "travel", "!"};
  LabelRegistry r = Registry();
  for (int i = 0; i < 200; ++i) {
    const auto before = r.new_subjects();
    try {
      r = MintNewSubject(r, names[rng() % names.size()], "a", "t");
    } catch (const Error&) {
    }
    ASSERT_GE(r.new_subjects().size(), before.size());
    for (const auto& e : before) EXPECT_TRUE(r.HasSubject(e.name));
  }
}

TEST(AnnotationTest, AddSpanAndCoverage) {
  const LabelRegistry reg = Registry();
  AnnotationDoc doc{"d", "a", 0, {}};
  doc = AddSpan(doc, {10, 25, {Label::Aspect()}}, 100, reg);
  ASSERT_EQ(doc.spans.size(), 1u);
  EXPECT_DOUBLE_EQ(doc.coverage_ratio(100), 0.15);
  EXPECT_FA_ERROR(AddSpan(doc, {90, 120, {Label::Aspect()}}, 100, reg),
                  kOutOfBounds);
  EXPECT_FA_ERROR(AddSpan(doc, {5, 5, {Label::Aspect()}}, 100, reg),
                  kOutOfBounds);
  EXPECT_FA_ERROR(AddSpan(doc, {0, 5, {}}, 100, reg), kEmptyLabelSet);
  EXPECT_FA_ERROR(AddSpan(doc, {0, 5, {Label::NewSubject("pet")}}, 100, reg),
                  kUnknownLabel);
  const AnnotationDoc multi = AddSpan(
      doc,
      {0, 100, {Label::SchemaFeature("purpose"), Label::Specialization(),
                Label::Specialization()}},
      100, reg);
  EXPECT_EQ(multi.spans.back().labels.size(), 2u);
  EXPECT_EQ(doc.spans.size(), 1u);  // the input copy is untouched
}

TEST(AnnotationTest, CoverageExamples) {
  AnnotationDoc doc{"d", "a", 0, {}};
  EXPECT_EQ(Coverage(doc, 100), 0.0);
  doc.spans = {{0, 50, {Label::Aspect()}}, {25, 75, {Label::Aspect()}}};
  EXPECT_DOUBLE_EQ(Coverage(doc, 100), 0.75);
  doc.spans = {{0, 100, {Label::Aspect()}}};
  EXPECT_DOUBLE_EQ(Coverage(doc, 100), 1.0);
}

TEST(AnnotationTest, CoverageMatchesMarkingOracleAndIsOrderFree) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t len = 1 + rng() % 200;
    AnnotationDoc doc{"d", "a", 0, {}};
    const int spans = static_cast<int>(rng() % 12);
    for (int i = 0; i < spans; ++i) {
      const auto a = static_cast<std::int64_t>(rng() % len);
      const auto b = static_cast<std::int64_t>(rng() % len);
      doc.spans.push_back({std::min(a, b), std::max(a, b) + 1, {Label::Aspect()}});
    }
    const double expected = oracle::CoverageByMarking(doc, len);
    EXPECT_NEAR(Coverage(doc, len), expected, 1e-15);
    std::shuffle(doc.spans.begin(), doc.spans.end(), rng);
    EXPECT_NEAR(Coverage(doc, len), expected, 1e-15);
  }
}

TEST(AnnotationTest, FileFormatRoundTrip) {
  const FeatureSchema& s = *GcdSchema();
  const AnnotationDoc doc{
      "model-a_1_1",
      "ann/1",
      3,
      {{0, 5, {Label::SchemaFeature("age"), Label::Aspect()}},
       {4, 9, {Label::NewSubject("pet")}}}};
  const std::string text = SerializeAnnotation(doc, s);
  EXPECT_EQ(ParseAnnotation(text, s), doc);
  EXPECT_EQ(SerializeAnnotation(ParseAnnotation(text, s), s), text);
  EXPECT_NE(text.find("\"GCD_age\""), std::string::npos);
  EXPECT_FA_ERROR(ParseAnnotation("{}", s), kParse);
}

TEST(AnnotationTest, DirectoryLayoutAndLoading) {
  testutil::TempDir dir;
  const FeatureSchema& s = *GcdSchema();
  const AnnotationDoc a{"d1", "x/y", 1, {{0, 1, {Label::Aspect()}}}};
  const AnnotationDoc b{"d2", "x/y", 1, {}};
  WriteFileAtomic(AnnotationPath(dir.path(), a.doc_id, a.annotator_id),
                  SerializeAnnotation(a, s));
  WriteFileAtomic(AnnotationPath(dir.path(), b.doc_id, b.annotator_id),
                  SerializeAnnotation(b, s));
  WriteFileAtomic(dir / kRegistryFile, Registry().Serialize());
  EXPECT_EQ(AnnotationPath(dir.path(), "d1", "x/y"), dir / "x%2Fy/d1.json");
  const auto docs = LoadAnnotationDir(dir.path(), s);
  ASSERT_EQ(docs.size(), 2u);
  EXPECT_EQ(docs[0], a);
  WriteFileAtomic(dir / "copy/d1.json", SerializeAnnotation(a, s));
  EXPECT_FA_ERROR(LoadAnnotationDir(dir.path(), s), kDuplicateId);
}

TEST(TaxonomyTest, TenKindsInThreeClasses) {
  const auto all = MismatchTaxonomy();
  ASSERT_EQ(all.size(), 10u);
  int per_class[4] = {0, 0, 0, 0};
  for (const auto& m : all) ++per_class[m.type_class];
  EXPECT_EQ(per_class[1], 3);
  EXPECT_EQ(per_class[2], 3);
  EXPECT_EQ(per_class[3], 4);
}

TEST(TaxonomyTest, Classification) {
  const MismatchInfo& spec = ClassifyMismatch("specialization");
  EXPECT_EQ(spec.type_class, 1);
  EXPECT_EQ(TraitString(spec), "asymmetric/quantitative/additive");
  const MismatchInfo& omitted = ClassifyMismatch("Omitted_Subject");
  EXPECT_EQ(omitted.type_class, 2);
  EXPECT_EQ(TraitString(omitted), "asymmetric/quantitative/omissive");
  const MismatchInfo& inconsistent = ClassifyMismatch("inconsistent-subject");
  EXPECT_EQ(inconsistent.type_class, 3);
  EXPECT_EQ(TraitString(inconsistent), "symmetric/qualitative/semantic");
  EXPECT_FA_ERROR(ClassifyMismatch("vague subject"), kUnknownMismatch);
  for (const auto& m : MismatchTaxonomy()) {
    EXPECT_EQ(&ClassifyMismatch(m.name), &m);
  }
}

}  // namespace
}  // namespace fidaudit
