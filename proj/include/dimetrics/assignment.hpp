// Copyright 2026 The dimetrics Authors
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

// Minimum-cost rectangular bipartite assignment.

#ifndef DIMETRICS_ASSIGNMENT_HPP_
#define DIMETRICS_ASSIGNMENT_HPP_

#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace dimetrics {

// Row-major matrix of nonnegative finite costs. Rows are GT items, columns
// predicted items.
class CostMatrix {
 public:
  CostMatrix() = default;
  // Throws std::invalid_argument unless costs.size() == rows * cols and every
  // entry is finite and >= 0.
  CostMatrix(std::size_t rows, std::size_t cols, std::vector<double> costs);
  CostMatrix(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double at(std::size_t r, std::size_t c) const { return costs_[r * cols_ + c]; }
  std::span<const double> data() const { return costs_; }

  CostMatrix transposed() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> costs_;
};

using AssignedPair = std::pair<std::size_t, std::size_t>;

struct Assignment {
  // Sorted by row; every row and column at most once.
  std::vector<AssignedPair> pairs;
  double total_cost = 0.0;
};

// Optimal matching of size min(rows, cols). Among equally cheap matchings the
// lexicographically smallest pair list is returned. O(n^3) for the solve.
Assignment solve_assignment(const CostMatrix& m);

struct PaddedAssignment {
  std::vector<AssignedPair> pairs;
  std::vector<std::size_t> dropped_rows;
  std::vector<std::size_t> dropped_cols;
  // Matched costs plus the drop costs of every unmatched row and column.
  double total_cost = 0.0;
};

// Matching where any row or column may stay unmatched at its drop cost.
// Solved on the (rows + cols) square matrix
//
//   [ m        | R  ]      R = diag(row_drops), sentinel elsewhere
//   [ C        | 0  ]      C = diag(col_drops), sentinel elsewhere
//
// where the sentinel is the sum of every finite cost plus one. Throws
// std::invalid_argument on size mismatch or negative / non-finite drops.
PaddedAssignment solve_assignment_padded(const CostMatrix& m,
                                         std::span<const double> row_drop_costs,
                                         std::span<const double> col_drop_costs);

}  // namespace dimetrics

#endif  // DIMETRICS_ASSIGNMENT_HPP_
