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

#ifndef FIDAUDIT_ANNOTATION_TAXONOMY_HPP_
#define FIDAUDIT_ANNOTATION_TAXONOMY_HPP_

#include <span>
#include <string>
#include <string_view>

namespace fidaudit {

enum class Symmetry { kSymmetric, kAsymmetric };
enum class Comparison { kQuantitative, kQualitative };
enum class InformationKind { kAdditive, kOmissive, kSemantic };

// One row of the representation mismatch typology. Type 1 mismatches are
// additive (the self-description says more), Type 2 omissive, Type 3
// semantic inconsistencies.
struct MismatchInfo {
  std::string_view name;
  int type_class;
  Symmetry symmetry;
  Comparison comparison;
  InformationKind information;
};

// All ten mismatch kinds, grouped by type class.
std::span<const MismatchInfo> MismatchTaxonomy();

// Name lookup ignores case and treats '_' and '-' as spaces.
// Throws Error(kUnknownMismatch).
const MismatchInfo& ClassifyMismatch(std::string_view name);

// "asymmetric/quantitative/additive"
std::string TraitString(const MismatchInfo& info);

}  // namespace fidaudit

#endif  // FIDAUDIT_ANNOTATION_TAXONOMY_HPP_
