// Copyright 2026 The stmkg Authors.
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

#ifndef STMKG_ASSIGNMENT_HPP_
#define STMKG_ASSIGNMENT_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

namespace stmkg {

struct Assignment {
  // row_to_col[i] is the column assigned to row i, or -1 when unassigned
  // (only possible when there are more rows than columns).
  std::vector<long> row_to_col;
  double total = 0.0;
};

// Maximum-weight assignment of rows to distinct columns (Kuhn-Munkres with
// potentials, O(n^2 m)). Every row is matched when rows <= columns, every
// column otherwise.
inline Assignment optimal_assignment(const std::vector<std::vector<double>>& weights) {
  const std::size_t rows = weights.size();
  const std::size_t cols = rows ? weights[0].size() : 0;
  Assignment result;
  result.row_to_col.assign(rows, -1);
  if (rows == 0 || cols == 0) return result;

  double max_w = 0.0;
  for (const auto& row : weights) {
    if (row.size() != cols) throw std::invalid_argument("ragged weight matrix");
    for (double w : row) {
      if (!std::isfinite(w) || w < 0.0) {
        throw std::invalid_argument("weights must be finite and non-negative");
      }
      max_w = std::max(max_w, w);
    }
  }

  // Solve with n <= m, transposing when needed; minimize (max_w - w).
  const bool transposed = rows > cols;
  const std::size_t n = transposed ? cols : rows;
  const std::size_t m = transposed ? rows : cols;
  auto cost = [&](std::size_t i, std::size_t j) {
    double w = transposed ? weights[j][i] : weights[i][j];
    return max_w - w;
  };

  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
  std::vector<std::size_t> p(m + 1, 0), way(m + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(m + 1, inf);
    std::vector<bool> used(m + 1, false);
    do {
      used[j0] = true;
      std::size_t i0 = p[j0], j1 = 0;
      double delta = inf;
      for (std::size_t j = 1; j <= m; ++j) {
        if (used[j]) continue;
        double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }

  for (std::size_t j = 1; j <= m; ++j) {
    if (p[j] == 0) continue;
    std::size_t a = p[j] - 1, b = j - 1;
    std::size_t r = transposed ? b : a;
    std::size_t c = transposed ? a : b;
    result.row_to_col[r] = static_cast<long>(c);
    result.total += weights[r][c];
  }
  return result;
}

}  // namespace stmkg

#endif  // STMKG_ASSIGNMENT_HPP_
