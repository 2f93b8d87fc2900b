// Copyright 2026 The Authors.
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

#include <limits>

#include "kernels_internal.hpp"

namespace critique::kernels {

namespace detail {

void pareto_row_scalar(const double* costs, std::size_t n, std::size_t m, std::size_t row,
                       std::uint8_t* out) {
  for (std::size_t j = 0; j < n; ++j) {
    bool not_worse = true;
    bool better = false;
    bool equal = true;
    for (std::size_t p = 0; p < m; ++p) {
      double mine = costs[p * n + row];
      double theirs = costs[p * n + j];
      not_worse = not_worse && theirs <= mine;
      better = better || theirs < mine;
      equal = equal && theirs == mine;
    }
    out[j] = (not_worse && better) ? kDominates : (equal ? kEqual : kNone);
  }
  out[row] = kNone;
}

void utility_row_scalar(const double* utility, std::size_t n, std::size_t row, std::uint8_t* out) {
  const double mine = utility[row];
  for (std::size_t j = 0; j < n; ++j) {
    out[j] = utility[j] > mine ? kDominates : (utility[j] == mine ? kEqual : kNone);
  }
  out[row] = kNone;
}

void weighted_utility_scalar(const double* costs, const double* weights, std::size_t n,
                             std::size_t m, double* out) {
  for (std::size_t i = 0; i < n; ++i) {
    double total = 0.0;
    for (std::size_t p = 0; p < m; ++p) total += weights[p] * (1.0 - costs[p * n + i]);
    out[i] = total;
  }
}

RowBounds row_bounds_scalar(const double* values, const std::uint8_t* relation, std::size_t n,
                            double pivot) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  RowBounds b{inf, -inf, -inf, inf, false, 0};
  for (std::size_t j = 0; j < n; ++j) {
    const std::uint8_t code = relation[j];
    if (code == kNone) continue;
    const double v = values[j];
    if (code == kDominates) {
      b.dominator_min = v < b.dominator_min ? v : b.dominator_min;
      b.dominator_max = v > b.dominator_max ? v : b.dominator_max;
      b.dominator_at_pivot = b.dominator_at_pivot || v == pivot;
      ++b.dominator_count;
    }
    if (v < pivot && v > b.related_below) b.related_below = v;
    if (v > pivot && v < b.related_above) b.related_above = v;
  }
  return b;
}

}  // namespace detail

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar", detail::pareto_row_scalar, detail::utility_row_scalar,
                                 detail::weighted_utility_scalar, detail::row_bounds_scalar};
  return table;
}

}  // namespace critique::kernels
