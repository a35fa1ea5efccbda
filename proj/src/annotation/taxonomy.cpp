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

#include "annotation/taxonomy.hpp"

#include <array>

#include "common/error.hpp"
#include "common/text.hpp"

namespace fidaudit {
namespace {

constexpr Symmetry kAsym = Symmetry::kAsymmetric;
constexpr Symmetry kSym = Symmetry::kSymmetric;
constexpr Comparison kQuant = Comparison::kQuantitative;
constexpr Comparison kQual = Comparison::kQualitative;

constexpr std::array<MismatchInfo, 10> kTaxonomy = {{
    {"additional aspect", 1, kAsym, kQuant, InformationKind::kAdditive},
    {"specialization", 1, kAsym, kQuant, InformationKind::kAdditive},
    {"additional subject", 1, kAsym, kQuant, InformationKind::kAdditive},
    {"omitted aspect", 2, kAsym, kQuant, InformationKind::kOmissive},
    {"generalization", 2, kAsym, kQuant, InformationKind::kOmissive},
    {"omitted subject", 2, kAsym, kQuant, InformationKind::kOmissive},
    {"inconsistent aspect", 3, kSym, kQual, InformationKind::kSemantic},
    {"inconsistent specification", 3, kSym, kQual, InformationKind::kSemantic},
    {"inconsistent generalization", 3, kSym, kQual, InformationKind::kSemantic},
    {"inconsistent subject", 3, kSym, kQual, InformationKind::kSemantic},
}};

std::string NormalizeName(std::string_view name) {
  std::string out;
  bool space = false;
  for (char c : Trim(name)) {
    if (c == '_' || c == '-' || c == ' ' || c == '\t') {
      space = true;
      continue;
    }
    if (space && !out.empty()) out.push_back(' ');
    space = false;
    out.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : c);
  }
  return out;
}

}  // namespace

std::span<const MismatchInfo> MismatchTaxonomy() { return kTaxonomy; }

const MismatchInfo& ClassifyMismatch(std::string_view name) {
  const std::string wanted = NormalizeName(name);
  for (const MismatchInfo& info : kTaxonomy) {
    if (info.name == wanted) return info;
  }
  throw Error(ErrorCode::kUnknownMismatch,
              "unknown mismatch \"" + std::string(name) + "\"");
}

std::string TraitString(const MismatchInfo& info) {
  std::string out =
      info.symmetry == Symmetry::kSymmetric ? "symmetric" : "asymmetric";
  out += info.comparison == Comparison::kQuantitative ? "/quantitative"
                                                      : "/qualitative";
  switch (info.information) {
    case InformationKind::kAdditive: out += "/additive"; break;
    case InformationKind::kOmissive: out += "/omissive"; break;
    case InformationKind::kSemantic: out += "/semantic"; break;
  }
  return out;
}

}  // namespace fidaudit
