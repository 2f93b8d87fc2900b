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

#pragma once

// Data-parallel inner loops of dominance indexing and suggestion scoring.
// Every kernel has a scalar reference implementation; wider variants are
// selected at runtime and must produce bit-identical output.

#include <cstddef>
#include <cstdint>

namespace critique::kernels {

// Relation codes written by the row kernels: out[j] describes option j
// relative to the row option.
inline constexpr std::uint8_t kNone = 0;
inline constexpr std::uint8_t kDominates = 1;  // j is strictly better
inline constexpr std::uint8_t kEqual = 2;      // j ties on every criterion

// Extremes of one attribute over the options related to a row option.
// Undefined extremes stay at +/-infinity.
struct RowBounds {
  double dominator_min;   // over kDominates
  double dominator_max;   // over kDominates
  double related_below;   // max over kDominates|kEqual with value < pivot
  double related_above;   // min over kDominates|kEqual with value > pivot
  bool dominator_at_pivot;  // some kDominates option has value == pivot
  std::size_t dominator_count;
};

struct KernelTable {
  const char* name;

  // costs: m columns of n costs each (column-major). Writes the Pareto
  // relation of every option to option `row`; out[row] = kNone.
  void (*pareto_row)(const double* costs, std::size_t n, std::size_t m, std::size_t row,
                     std::uint8_t* out);

  // Same, with strictly greater / equal utility as the relation.
  void (*utility_row)(const double* utility, std::size_t n, std::size_t row, std::uint8_t* out);

  // out[i] = sum_p weights[p] * (1 - costs[p*n + i]), accumulated in p order.
  void (*weighted_utility)(const double* costs, const double* weights, std::size_t n,
                           std::size_t m, double* out);

  RowBounds (*row_bounds)(const double* values, const std::uint8_t* relation, std::size_t n,
                          double pivot);
};

const KernelTable& scalar_kernels();

// nullptr when the variant was not compiled in or the CPU lacks it.
const KernelTable* avx2_kernels();

// Widest supported table, unless CRITIQUE_KERNELS=scalar is set in the
// environment.
const KernelTable& active_kernels();

}  // namespace critique::kernels
