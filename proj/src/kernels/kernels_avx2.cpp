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

// AVX2 variants: four doubles per lane group, scalar tails.

#include <immintrin.h>

#include <cstring>
#include <limits>

#include "kernels_internal.hpp"

namespace critique::kernels::detail {

namespace {

inline std::uint8_t code_from_masks(int dominates, int equal, int lane) {
  if ((dominates >> lane) & 1) return kDominates;
  return ((equal >> lane) & 1) ? kEqual : kNone;
}

void pareto_row_avx2(const double* costs, std::size_t n, std::size_t m, std::size_t row,
                     std::uint8_t* out) {
  const __m256d all = _mm256_castsi256_pd(_mm256_set1_epi64x(-1));
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    __m256d not_worse = all;
    __m256d better = _mm256_setzero_pd();
    __m256d equal = all;
    for (std::size_t p = 0; p < m; ++p) {
      const __m256d mine = _mm256_set1_pd(costs[p * n + row]);
      const __m256d theirs = _mm256_loadu_pd(costs + p * n + j);
      not_worse = _mm256_and_pd(not_worse, _mm256_cmp_pd(theirs, mine, _CMP_LE_OQ));
      better = _mm256_or_pd(better, _mm256_cmp_pd(theirs, mine, _CMP_LT_OQ));
      equal = _mm256_and_pd(equal, _mm256_cmp_pd(theirs, mine, _CMP_EQ_OQ));
    }
    const int dom = _mm256_movemask_pd(_mm256_and_pd(not_worse, better));
    const int eq = _mm256_movemask_pd(equal);
    for (int lane = 0; lane < 4; ++lane) out[j + lane] = code_from_masks(dom, eq, lane);
  }
  for (; j < n; ++j) {
    bool not_worse = true, better = false, equal = true;
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

void utility_row_avx2(const double* utility, std::size_t n, std::size_t row, std::uint8_t* out) {
  const double mine = utility[row];
  const __m256d pivot = _mm256_set1_pd(mine);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d u = _mm256_loadu_pd(utility + j);
    const int dom = _mm256_movemask_pd(_mm256_cmp_pd(u, pivot, _CMP_GT_OQ));
    const int eq = _mm256_movemask_pd(_mm256_cmp_pd(u, pivot, _CMP_EQ_OQ));
    for (int lane = 0; lane < 4; ++lane) out[j + lane] = code_from_masks(dom, eq, lane);
  }
  for (; j < n; ++j) {
    out[j] = utility[j] > mine ? kDominates : (utility[j] == mine ? kEqual : kNone);
  }
  out[row] = kNone;
}

void weighted_utility_avx2(const double* costs, const double* weights, std::size_t n,
                           std::size_t m, double* out) {
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d total = _mm256_setzero_pd();
    for (std::size_t p = 0; p < m; ++p) {
      const __m256d c = _mm256_loadu_pd(costs + p * n + i);
      total = _mm256_add_pd(total, _mm256_mul_pd(_mm256_set1_pd(weights[p]), _mm256_sub_pd(one, c)));
    }
    _mm256_storeu_pd(out + i, total);
  }
  for (; i < n; ++i) {
    double total = 0.0;
    for (std::size_t p = 0; p < m; ++p) total += weights[p] * (1.0 - costs[p * n + i]);
    out[i] = total;
  }
}

RowBounds row_bounds_avx2(const double* values, const std::uint8_t* relation, std::size_t n,
                          double pivot) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  const __m256d pos_inf = _mm256_set1_pd(inf);
  const __m256d neg_inf = _mm256_set1_pd(-inf);
  const __m256d pivot_v = _mm256_set1_pd(pivot);
  const __m256i one = _mm256_set1_epi64x(kDominates);
  const __m256i zero = _mm256_setzero_si256();
  const __m256d all = _mm256_castsi256_pd(_mm256_set1_epi64x(-1));

  __m256d dmin = pos_inf, dmax = neg_inf, below = neg_inf, above = pos_inf;
  __m256d hit = _mm256_setzero_pd();
  std::size_t count = 0;
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    std::int32_t packed;
    std::memcpy(&packed, relation + j, sizeof(packed));
    const __m256i codes = _mm256_cvtepu8_epi64(_mm_cvtsi32_si128(packed));
    const __m256d is_dom = _mm256_castsi256_pd(_mm256_cmpeq_epi64(codes, one));
    const __m256d is_rel = _mm256_xor_pd(_mm256_castsi256_pd(_mm256_cmpeq_epi64(codes, zero)), all);
    const __m256d v = _mm256_loadu_pd(values + j);

    dmin = _mm256_min_pd(dmin, _mm256_blendv_pd(pos_inf, v, is_dom));
    dmax = _mm256_max_pd(dmax, _mm256_blendv_pd(neg_inf, v, is_dom));
    hit = _mm256_or_pd(hit, _mm256_and_pd(is_dom, _mm256_cmp_pd(v, pivot_v, _CMP_EQ_OQ)));
    count += static_cast<std::size_t>(__builtin_popcount(_mm256_movemask_pd(is_dom)));

    const __m256d lt = _mm256_and_pd(is_rel, _mm256_cmp_pd(v, pivot_v, _CMP_LT_OQ));
    const __m256d gt = _mm256_and_pd(is_rel, _mm256_cmp_pd(v, pivot_v, _CMP_GT_OQ));
    below = _mm256_max_pd(below, _mm256_blendv_pd(neg_inf, v, lt));
    above = _mm256_min_pd(above, _mm256_blendv_pd(pos_inf, v, gt));
  }

  alignas(32) double lanes[4][4];
  _mm256_store_pd(lanes[0], dmin);
  _mm256_store_pd(lanes[1], dmax);
  _mm256_store_pd(lanes[2], below);
  _mm256_store_pd(lanes[3], above);
  RowBounds b{inf, -inf, -inf, inf, _mm256_movemask_pd(hit) != 0, count};
  for (int lane = 0; lane < 4; ++lane) {
    b.dominator_min = lanes[0][lane] < b.dominator_min ? lanes[0][lane] : b.dominator_min;
    b.dominator_max = lanes[1][lane] > b.dominator_max ? lanes[1][lane] : b.dominator_max;
    b.related_below = lanes[2][lane] > b.related_below ? lanes[2][lane] : b.related_below;
    b.related_above = lanes[3][lane] < b.related_above ? lanes[3][lane] : b.related_above;
  }
  if (j < n) {
    RowBounds tail = row_bounds_scalar(values + j, relation + j, n - j, pivot);
    b.dominator_min = tail.dominator_min < b.dominator_min ? tail.dominator_min : b.dominator_min;
    b.dominator_max = tail.dominator_max > b.dominator_max ? tail.dominator_max : b.dominator_max;
    b.related_below = tail.related_below > b.related_below ? tail.related_below : b.related_below;
    b.related_above = tail.related_above < b.related_above ? tail.related_above : b.related_above;
    b.dominator_at_pivot = b.dominator_at_pivot || tail.dominator_at_pivot;
    b.dominator_count += tail.dominator_count;
  }
  return b;
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table{"avx2", pareto_row_avx2, utility_row_avx2, weighted_utility_avx2,
                                 row_bounds_avx2};
  return table;
}

}  // namespace critique::kernels::detail
