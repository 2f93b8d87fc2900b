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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "critique/catalog.hpp"
#include "critique/kernels.hpp"
#include "critique/preference.hpp"

namespace critique {

enum class Criterion { pareto, utility };

/// Costs of every option under every preference of a model, stored one
/// preference per column so the kernels can stream across options.
class CostMatrix {
 public:
  CostMatrix(const PreferenceModel& model, const Catalog& catalog);

  std::size_t options() const { return n_; }
  std::size_t preferences() const { return m_; }
  std::span<const double> column(std::size_t pref) const {
    return {costs_.data() + pref * n_, n_};
  }
  double at(std::size_t pref, std::size_t option) const { return costs_[pref * n_ + option]; }
  const double* data() const { return costs_.data(); }
  const std::vector<double>& weights() const { return weights_; }

 private:
  std::size_t n_ = 0;
  std::size_t m_ = 0;
  std::vector<double> costs_;
  std::vector<double> weights_;
};

/// Per option: the options that dominate it and the options tied with it
/// (itself excluded). Lists are in catalog order.
class DominanceIndex {
 public:
  DominanceIndex(Criterion criterion, std::size_t n, std::vector<std::uint8_t> relation);

  Criterion criterion() const { return criterion_; }
  std::size_t size() const { return n_; }

  std::span<const std::uint32_t> dominators(std::size_t option) const {
    return span_of(dominator_ids_, dominator_offsets_, option);
  }
  std::span<const std::uint32_t> equals(std::size_t option) const {
    return span_of(equal_ids_, equal_offsets_, option);
  }
  // Relation codes (kernels::kNone/kDominates/kEqual) of all options to `option`.
  std::span<const std::uint8_t> relation_row(std::size_t option) const {
    return {relation_.data() + option * n_, n_};
  }
  bool dominated(std::size_t option) const { return !dominators(option).empty(); }

 private:
  static std::span<const std::uint32_t> span_of(const std::vector<std::uint32_t>& ids,
                                                const std::vector<std::size_t>& offsets,
                                                std::size_t option) {
    return {ids.data() + offsets.at(option), offsets.at(option + 1) - offsets.at(option)};
  }

  Criterion criterion_;
  std::size_t n_;
  std::vector<std::uint8_t> relation_;  // n x n, row = option
  std::vector<std::uint32_t> dominator_ids_;
  std::vector<std::size_t> dominator_offsets_;
  std::vector<std::uint32_t> equal_ids_;
  std::vector<std::size_t> equal_offsets_;
};

// Combined utility of every option (weighted sum or min combinator).
std::vector<double> utilities(const PreferenceModel& model, const Catalog& catalog,
                              const kernels::KernelTable& kernels = kernels::active_kernels());

DominanceIndex build_dominance_index(const PreferenceModel& model, const Catalog& catalog,
                                     Criterion criterion,
                                     const kernels::KernelTable& kernels = kernels::active_kernels());

// True when some option Pareto-dominates `option` under the matrix's model.
bool pareto_dominated(const CostMatrix& costs, std::size_t option,
                      const kernels::KernelTable& kernels = kernels::active_kernels());

// The k best options by utility, descending, ties by ascending id.
std::vector<std::size_t> top_k_candidates(const PreferenceModel& model, const Catalog& catalog,
                                          std::size_t k);

// All options ordered as top_k_candidates would order them.
std::vector<std::size_t> rank_by_utility(const std::vector<double>& utility, const Catalog& catalog);

std::string_view to_string(Criterion criterion);
Criterion parse_criterion(std::string_view text);

}  // namespace critique
