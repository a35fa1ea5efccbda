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

#ifndef FIDAUDIT_BASELINE_TRANSPORT_HPP_
#define FIDAUDIT_BASELINE_TRANSPORT_HPP_

#include <cstddef>
#include <span>
#include <vector>

namespace fidaudit {

struct TransportFlow {
  std::size_t row = 0;
  std::size_t col = 0;
  double amount = 0;
};

struct TransportSolution {
  double cost = 0;
  std::vector<TransportFlow> plan;  // basic cells, zero-flow ones included
  std::size_t iterations = 0;
};

// Exact solution of the balanced transportation problem
//
//   minimize   sum_ij T_ij * cost[i * demand.size() + j]
//   subject to sum_j T_ij = supply_i,  sum_i T_ij = demand_j,  T >= 0
//
// by the primal network simplex method on the bipartite transport graph. The
// initial basis comes from the north-west corner rule; entering cells follow
// Dantzig's rule and fall back to Bland's rule after a run of degenerate
// pivots, which rules out cycling.
//
// Throws Error(kSolverFailure) for empty or unbalanced inputs, negative
// masses, non-finite costs, or if the final plan violates feasibility.
TransportSolution SolveTransport(std::span<const double> supply,
                                 std::span<const double> demand,
                                 std::span<const double> cost);

}  // namespace fidaudit

#endif  // FIDAUDIT_BASELINE_TRANSPORT_HPP_
