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

#include "baseline/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "common/error.hpp"

namespace fidaudit {
namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

class NetworkSimplex {
 public:
  NetworkSimplex(std::span<const double> supply, std::span<const double> demand,
                 std::span<const double> cost)
      : m_(supply.size()),
        n_(demand.size()),
        cost_(cost),
        row_adj_(m_),
        col_adj_(n_),
        is_basic_(m_ * n_, 0),
        u_(m_),
        v_(n_) {
    double max_cost = 0;
    for (double c : cost_) max_cost = std::max(max_cost, std::abs(c));
    eps_ = 1e-12 * std::max(1.0, max_cost);
    InitNorthWest(supply, demand);
  }

  TransportSolution Run() {
    const std::size_t max_iterations = 1000 + 100 * m_ * n_;
    const std::size_t degenerate_limit = 50 + m_ + n_;
    std::size_t degenerate_run = 0;
    bool bland = false;
    std::size_t iterations = 0;
    for (;; ++iterations) {
      if (iterations > max_iterations) {
        throw Error(ErrorCode::kSolverFailure,
                    "transport simplex exceeded " +
                        std::to_string(max_iterations) + " pivots");
      }
      ComputePotentials();
      const std::size_t entering = bland ? FirstNegative() : MostNegative();
      if (entering == kNone) break;
      const double theta = Pivot(entering / n_, entering % n_);
      if (theta == 0.0) {
        if (++degenerate_run > degenerate_limit) bland = true;
      } else {
        degenerate_run = 0;
      }
    }
    TransportSolution solution;
    solution.iterations = iterations;
    for (const Cell& c : basis_) {
      solution.plan.push_back({c.row, c.col, c.flow});
      solution.cost += c.flow * cost_[c.row * n_ + c.col];
    }
    return solution;
  }

 private:
  struct Cell {
    std::size_t row;
    std::size_t col;
    double flow;
  };

  void AddBasic(std::size_t row, std::size_t col, double flow) {
    const std::size_t id = basis_.size();
    basis_.push_back({row, col, flow});
    row_adj_[row].push_back(id);
    col_adj_[col].push_back(id);
    is_basic_[row * n_ + col] = 1;
  }

  // Staircase through the table; visits exactly m + n - 1 cells, which form
  // a spanning tree of the bipartite graph.
  void InitNorthWest(std::span<const double> supply,
                     std::span<const double> demand) {
    std::vector<double> s(supply.begin(), supply.end());
    std::vector<double> d(demand.begin(), demand.end());
    std::size_t i = 0;
    std::size_t j = 0;
    while (true) {
      const double flow = std::min(s[i], d[j]);
      AddBasic(i, j, flow);
      s[i] -= flow;
      d[j] -= flow;
      if (i == m_ - 1 && j == n_ - 1) break;
      if (j == n_ - 1 || (i < m_ - 1 && s[i] <= d[j])) {
        ++i;
      } else {
        ++j;
      }
    }
  }

  // u_row + v_col = cost on every basic cell, anchored at u_0 = 0.
  void ComputePotentials() {
    std::vector<char> seen(m_ + n_, 0);
    std::vector<std::size_t> stack = {0};
    u_[0] = 0;
    seen[0] = 1;
    while (!stack.empty()) {
      const std::size_t node = stack.back();
      stack.pop_back();
      const bool is_row = node < m_;
      const auto& adj = is_row ? row_adj_[node] : col_adj_[node - m_];
      for (std::size_t id : adj) {
        const Cell& c = basis_[id];
        const std::size_t other = is_row ? m_ + c.col : c.row;
        if (seen[other]) continue;
        seen[other] = 1;
        const double cij = cost_[c.row * n_ + c.col];
        if (is_row) {
          v_[c.col] = cij - u_[c.row];
        } else {
          u_[c.row] = cij - v_[c.col];
        }
        stack.push_back(other);
      }
    }
  }

  double Reduced(std::size_t i, std::size_t j) const {
    return cost_[i * n_ + j] - u_[i] - v_[j];
  }

  std::size_t MostNegative() const {
    std::size_t best = kNone;
    double best_value = -eps_;
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        if (is_basic_[i * n_ + j]) continue;
        const double r = Reduced(i, j);
        if (r < best_value) {
          best_value = r;
          best = i * n_ + j;
        }
      }
    }
    return best;
  }

  std::size_t FirstNegative() const {
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        if (!is_basic_[i * n_ + j] && Reduced(i, j) < -eps_) return i * n_ + j;
      }
    }
    return kNone;
  }

  // Brings (row, col) into the basis; returns the step length.
  double Pivot(std::size_t row, std::size_t col) {
    // Tree path from the entering column back to the entering row.
    std::vector<std::size_t> parent_edge(m_ + n_, kNone);
    std::vector<char> seen(m_ + n_, 0);
    std::vector<std::size_t> stack = {row};
    seen[row] = 1;
    const std::size_t target = m_ + col;
    while (!stack.empty() && !seen[target]) {
      const std::size_t node = stack.back();
      stack.pop_back();
      const bool is_row = node < m_;
      const auto& adj = is_row ? row_adj_[node] : col_adj_[node - m_];
      for (std::size_t id : adj) {
        const Cell& c = basis_[id];
        const std::size_t other = is_row ? m_ + c.col : c.row;
        if (seen[other]) continue;
        seen[other] = 1;
        parent_edge[other] = id;
        stack.push_back(other);
      }
    }
    std::vector<std::size_t> path;
    for (std::size_t node = target; node != row;) {
      const std::size_t id = parent_edge[node];
      path.push_back(id);
      const Cell& c = basis_[id];
      node = node < m_ ? m_ + c.col : c.row;
    }
    // path[0], path[2], ... lose flow; path[1], path[3], ... gain it.
    std::size_t leaving = kNone;
    double theta = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < path.size(); k += 2) {
      const Cell& c = basis_[path[k]];
      const std::size_t index = c.row * n_ + c.col;
      if (c.flow < theta ||
          (c.flow == theta &&
           index < basis_[leaving].row * n_ + basis_[leaving].col)) {
        theta = c.flow;
        leaving = path[k];
      }
    }
    for (std::size_t k = 0; k < path.size(); ++k) {
      Cell& c = basis_[path[k]];
      if (k % 2 == 0) {
        c.flow = std::max(0.0, c.flow - theta);
      } else {
        c.flow += theta;
      }
    }
    Cell& out = basis_[leaving];
    auto erase = [](std::vector<std::size_t>& list, std::size_t id) {
      list.erase(std::find(list.begin(), list.end(), id));
    };
    erase(row_adj_[out.row], leaving);
    erase(col_adj_[out.col], leaving);
    is_basic_[out.row * n_ + out.col] = 0;
    out = Cell{row, col, theta};
    row_adj_[row].push_back(leaving);
    col_adj_[col].push_back(leaving);
    is_basic_[row * n_ + col] = 1;
    return theta;
  }

  std::size_t m_;
  std::size_t n_;
  std::span<const double> cost_;
  std::vector<Cell> basis_;
  std::vector<std::vector<std::size_t>> row_adj_;
  std::vector<std::vector<std::size_t>> col_adj_;
  std::vector<char> is_basic_;
  std::vector<double> u_;
  std::vector<double> v_;
  double eps_ = 0;
};

}  // namespace

TransportSolution SolveTransport(std::span<const double> supply,
                                 std::span<const double> demand,
                                 std::span<const double> cost) {
  if (supply.empty() || demand.empty()) {
    throw Error(ErrorCode::kSolverFailure, "empty transport problem");
  }
  if (cost.size() != supply.size() * demand.size()) {
    throw Error(ErrorCode::kSolverFailure, "cost matrix has the wrong size");
  }
  double total_supply = 0;
  double total_demand = 0;
  for (double s : supply) {
    if (!(s >= 0) || !std::isfinite(s)) {
      throw Error(ErrorCode::kSolverFailure, "negative or non-finite supply");
    }
    total_supply += s;
  }
  for (double d : demand) {
    if (!(d >= 0) || !std::isfinite(d)) {
      throw Error(ErrorCode::kSolverFailure, "negative or non-finite demand");
    }
    total_demand += d;
  }
  for (double c : cost) {
    if (!std::isfinite(c)) {
      throw Error(ErrorCode::kSolverFailure, "non-finite transport cost");
    }
  }
  const double tolerance = 1e-9 * std::max(1.0, total_supply);
  if (std::abs(total_supply - total_demand) > tolerance) {
    throw Error(ErrorCode::kSolverFailure, "unbalanced transport problem");
  }

  TransportSolution solution = NetworkSimplex(supply, demand, cost).Run();

  std::vector<double> row_sum(supply.size(), 0.0);
  std::vector<double> col_sum(demand.size(), 0.0);
  for (const TransportFlow& f : solution.plan) {
    if (f.amount < 0) {
      throw Error(ErrorCode::kSolverFailure, "negative flow in final plan");
    }
    row_sum[f.row] += f.amount;
    col_sum[f.col] += f.amount;
  }
  for (std::size_t i = 0; i < supply.size(); ++i) {
    if (std::abs(row_sum[i] - supply[i]) > tolerance) {
      throw Error(ErrorCode::kSolverFailure, "final plan violates row sums");
    }
  }
  for (std::size_t j = 0; j < demand.size(); ++j) {
    if (std::abs(col_sum[j] - demand[j]) > tolerance) {
      throw Error(ErrorCode::kSolverFailure, "final plan violates column sums");
    }
  }
  return solution;
}

}  // namespace fidaudit
