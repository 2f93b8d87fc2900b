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

#include "critique/kernels.hpp"

namespace critique::kernels::detail {

void pareto_row_scalar(const double* costs, std::size_t n, std::size_t m, std::size_t row,
                       std::uint8_t* out);
void utility_row_scalar(const double* utility, std::size_t n, std::size_t row, std::uint8_t* out);
void weighted_utility_scalar(const double* costs, const double* weights, std::size_t n,
                             std::size_t m, double* out);
RowBounds row_bounds_scalar(const double* values, const std::uint8_t* relation, std::size_t n,
                            double pivot);

#if defined(CRITIQUE_HAVE_AVX2)
const KernelTable& avx2_table();
#endif

}  // namespace critique::kernels::detail
