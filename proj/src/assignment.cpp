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

#include "dimetrics/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace dimetrics {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

void check_cost(double c, const char* what) {
  if (!std::isfinite(c)) throw std::invalid_argument(std::string(what) + " is not finite");
  if (c < 0) throw std::invalid_argument(std::string(what) + " is negative");
}

// Square n x n problem, row-major costs.
class SquareSolver {
 public:
  SquareSolver(const std::vector<double>& costs, std::size_t n)
      : a_(costs), n_(n), u_(n + 1, 0.0), v_(n + 1, 0.0) {}

  // Returns col_of_row.
  std::vector<std::size_t> solve() {
    if (n_ == 0) return {};
    hungarian();
    lexicographic_repair();
    return col_of_row_;
  }

 private:
  double cost(std::size_t r, std::size_t c) const { return a_[r * n_ + c]; }

  // Shortest augmenting path Hungarian method with row/column potentials
  // (1-based internally, column 0 is the virtual source).
  void hungarian() {
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> p(n_ + 1, 0), way(n_ + 1, 0);
    std::vector<double> minv(n_ + 1);
    std::vector<char> used(n_ + 1);
    for (std::size_t i = 1; i <= n_; ++i) {
      p[0] = i;
      std::size_t j0 = 0;
      std::fill(minv.begin(), minv.end(), inf);
      std::fill(used.begin(), used.end(), 0);
      do {
        used[j0] = 1;
        const std::size_t i0 = p[j0];
        double delta = inf;
        std::size_t j1 = 0;
        for (std::size_t j = 1; j <= n_; ++j) {
          if (used[j]) continue;
          const double cur = cost(i0 - 1, j - 1) - u_[i0] - v_[j];
          if (cur < minv[j]) {
            minv[j] = cur;
            way[j] = j0;
          }
          if (minv[j] < delta) {
            delta = minv[j];
            j1 = j;
          }
        }
        for (std::size_t j = 0; j <= n_; ++j) {
          if (used[j]) {
            u_[p[j]] += delta;
            v_[j] -= delta;
          } else {
            minv[j] -= delta;
          }
        }
        j0 = j1;
      } while (p[j0] != 0);
      do {
        const std::size_t j1 = way[j0];
        p[j0] = p[j1];
        j0 = j1;
      } while (j0 != 0);
    }
    col_of_row_.assign(n_, kNone);
    row_of_col_.assign(n_, kNone);
    for (std::size_t j = 1; j <= n_; ++j) {
      col_of_row_[p[j] - 1] = j - 1;
      row_of_col_[j - 1] = p[j] - 1;
    }
    double scale = 1.0;
    for (double c : a_) scale = std::max(scale, c);
    tolerance_ = 1e-10 * scale;
  }

  // Every optimal assignment is a perfect matching on zero-reduced-cost
  // edges of the optimal potentials, so the smallest one is built greedily
  // row by row, keeping a perfect matching alive with alternating paths.
  bool tight(std::size_t r, std::size_t c) const {
    return col_of_row_[r] == c ||
           cost(r, c) - u_[r + 1] - v_[c + 1] <= tolerance_;
  }

  bool augment(std::size_t row) {
    for (std::size_t c = 0; c < n_; ++c) {
      if (fixed_col_[c] || visited_[c] || !tight(row, c)) continue;
      visited_[c] = 1;
      if (row_of_col_[c] == kNone || augment(row_of_col_[c])) {
        row_of_col_[c] = row;
        col_of_row_[row] = c;
        return true;
      }
    }
    return false;
  }

  void lexicographic_repair() {
    fixed_col_.assign(n_, 0);
    visited_.assign(n_, 0);
    for (std::size_t r = 0; r < n_; ++r) {
      const std::size_t original = col_of_row_[r];
      for (std::size_t c = 0; c < original; ++c) {
        if (fixed_col_[c] || !tight(r, c)) continue;
        const std::size_t displaced = row_of_col_[c];
        auto saved_col_of_row = col_of_row_;
        auto saved_row_of_col = row_of_col_;
        col_of_row_[r] = c;
        row_of_col_[c] = r;
        row_of_col_[original] = kNone;
        col_of_row_[displaced] = kNone;
        fixed_col_[c] = 1;
        std::fill(visited_.begin(), visited_.end(), 0);
        if (augment(displaced)) break;
        fixed_col_[c] = 0;
        col_of_row_ = std::move(saved_col_of_row);
        row_of_col_ = std::move(saved_row_of_col);
      }
      fixed_col_[col_of_row_[r]] = 1;
    }
  }

  const std::vector<double>& a_;
  std::size_t n_;
  std::vector<double> u_, v_;
  std::vector<std::size_t> col_of_row_, row_of_col_;
  std::vector<char> fixed_col_, visited_;
  double tolerance_ = 0.0;
};

}  // namespace

CostMatrix::CostMatrix(std::size_t rows, std::size_t cols, std::vector<double> costs)
    : rows_(rows), cols_(cols), costs_(std::move(costs)) {
  if (costs_.size() != rows_ * cols_) {
    throw std::invalid_argument("cost matrix size does not match its dimensions");
  }
  for (double c : costs_) check_cost(c, "cost entry");
}

CostMatrix::CostMatrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  for (const auto& row : rows) {
    if (row.size() != cols_) throw std::invalid_argument("ragged cost matrix");
    for (double c : row) {
      check_cost(c, "cost entry");
      costs_.push_back(c);
    }
  }
}

CostMatrix CostMatrix::transposed() const {
  std::vector<double> t(costs_.size());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t[c * rows_ + r] = at(r, c);
  }
  return CostMatrix(cols_, rows_, std::move(t));
}

Assignment solve_assignment(const CostMatrix& m) {
  // Rectangular problems are padded to square with zero-cost dummies; dummy
  // indices come last so real rows and columns win ties.
  const std::size_t n = std::max(m.rows(), m.cols());
  std::vector<double> square(n * n, 0.0);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) square[r * n + c] = m.at(r, c);
  }
  const std::vector<std::size_t> col_of_row = SquareSolver(square, n).solve();
  Assignment out;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const std::size_t c = col_of_row[r];
    if (c < m.cols()) {
      out.pairs.emplace_back(r, c);
      out.total_cost += m.at(r, c);
    }
  }
  return out;
}

PaddedAssignment solve_assignment_padded(const CostMatrix& m,
                                         std::span<const double> row_drop_costs,
                                         std::span<const double> col_drop_costs) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  if (row_drop_costs.size() != rows || col_drop_costs.size() != cols) {
    throw std::invalid_argument("drop-cost lists do not match the matrix dimensions");
  }
  double sentinel = 1.0;
  for (double c : m.data()) sentinel += c;
  for (double c : row_drop_costs) {
    check_cost(c, "row drop cost");
    sentinel += c;
  }
  for (double c : col_drop_costs) {
    check_cost(c, "column drop cost");
    sentinel += c;
  }

  const std::size_t n = rows + cols;
  std::vector<double> square(n * n, 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) square[r * n + c] = m.at(r, c);
    for (std::size_t k = 0; k < rows; ++k) {
      square[r * n + cols + k] = k == r ? row_drop_costs[r] : sentinel;
    }
  }
  for (std::size_t k = 0; k < cols; ++k) {
    for (std::size_t c = 0; c < cols; ++c) {
      square[(rows + k) * n + c] = k == c ? col_drop_costs[c] : sentinel;
    }
  }

  const std::vector<std::size_t> col_of_row = SquareSolver(square, n).solve();
  PaddedAssignment out;
  std::vector<char> col_matched(cols, 0);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::size_t c = col_of_row[r];
    if (c < cols) {
      out.pairs.emplace_back(r, c);
      col_matched[c] = 1;
      out.total_cost += m.at(r, c);
    } else {
      out.dropped_rows.push_back(r);
      out.total_cost += row_drop_costs[r];
    }
  }
  for (std::size_t c = 0; c < cols; ++c) {
    if (!col_matched[c]) {
      out.dropped_cols.push_back(c);
      out.total_cost += col_drop_costs[c];
    }
  }
  return out;
}

}  // namespace dimetrics
