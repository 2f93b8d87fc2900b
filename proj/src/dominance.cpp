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

#include "critique/dominance.hpp"

#include <algorithm>
#include <numeric>

#include "critique/error.hpp"

namespace critique {

CostMatrix::CostMatrix(const PreferenceModel& model, const Catalog& catalog)
    : n_(catalog.size()), m_(model.size()), costs_(n_ * m_), weights_(m_) {
  for (std::size_t p = 0; p < m_; ++p) {
    const auto& pref = model.preferences[p];
    const auto attr = catalog.attribute_index(pref.attr);
    const auto& schema = catalog.attribute(attr);
    const auto values = catalog.column(attr);
    for (std::size_t i = 0; i < n_; ++i) costs_[p * n_ + i] = cost(pref, schema, values[i]);
    weights_[p] = static_cast<double>(pref.weight);
  }
}

DominanceIndex::DominanceIndex(Criterion criterion, std::size_t n, std::vector<std::uint8_t> relation)
    : criterion_(criterion), n_(n), relation_(std::move(relation)) {
  if (relation_.size() != n_ * n_) throw Error(ErrorCode::config, "relation matrix has the wrong size");
  dominator_offsets_.reserve(n_ + 1);
  equal_offsets_.reserve(n_ + 1);
  dominator_offsets_.push_back(0);
  equal_offsets_.push_back(0);
  for (std::size_t o = 0; o < n_; ++o) {
    const auto* row = relation_.data() + o * n_;
    for (std::size_t j = 0; j < n_; ++j) {
      if (row[j] == kernels::kDominates) {
        dominator_ids_.push_back(static_cast<std::uint32_t>(j));
      } else if (row[j] == kernels::kEqual) {
        equal_ids_.push_back(static_cast<std::uint32_t>(j));
      }
    }
    dominator_offsets_.push_back(dominator_ids_.size());
    equal_offsets_.push_back(equal_ids_.size());
  }
}

std::vector<double> utilities(const PreferenceModel& model, const Catalog& catalog,
                              const kernels::KernelTable& kernels) {
  if (model.empty()) throw Error(ErrorCode::empty_model, "no preference stated");
  CostMatrix costs(model, catalog);
  std::vector<double> out(catalog.size());
  if (model.combinator == Combinator::min_combinator) {
    for (std::size_t i = 0; i < out.size(); ++i) {
      double lowest = 1.0;
      for (std::size_t p = 0; p < costs.preferences(); ++p) lowest = std::min(lowest, 1.0 - costs.at(p, i));
      out[i] = lowest;
    }
    return out;
  }
  kernels.weighted_utility(costs.data(), costs.weights().data(), costs.options(), costs.preferences(),
                           out.data());
  return out;
}

DominanceIndex build_dominance_index(const PreferenceModel& model, const Catalog& catalog,
                                     Criterion criterion, const kernels::KernelTable& kernels) {
  if (model.empty()) throw Error(ErrorCode::empty_model, "no preference stated");
  const std::size_t n = catalog.size();
  std::vector<std::uint8_t> relation(n * n);
  if (criterion == Criterion::pareto) {
    CostMatrix costs(model, catalog);
    for (std::size_t o = 0; o < n; ++o) {
      kernels.pareto_row(costs.data(), n, costs.preferences(), o, relation.data() + o * n);
    }
  } else {
    auto utility = utilities(model, catalog, kernels);
    for (std::size_t o = 0; o < n; ++o) {
      kernels.utility_row(utility.data(), n, o, relation.data() + o * n);
    }
  }
  return DominanceIndex(criterion, n, std::move(relation));
}

bool pareto_dominated(const CostMatrix& costs, std::size_t option, const kernels::KernelTable& kernels) {
  std::vector<std::uint8_t> row(costs.options());
  kernels.pareto_row(costs.data(), costs.options(), costs.preferences(), option, row.data());
  return std::find(row.begin(), row.end(), kernels::kDominates) != row.end();
}

std::vector<std::size_t> rank_by_utility(const std::vector<double>& utility, const Catalog& catalog) {
  std::vector<std::size_t> order(utility.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (utility[a] != utility[b]) return utility[a] > utility[b];
    return catalog.option(a).id < catalog.option(b).id;
  });
  return order;
}

std::vector<std::size_t> top_k_candidates(const PreferenceModel& model, const Catalog& catalog,
                                          std::size_t k) {
  if (k < 1) throw Error(ErrorCode::config, "k must be at least 1");
  auto order = rank_by_utility(utilities(model, catalog), catalog);
  if (order.size() > k) order.resize(k);
  return order;
}

std::string_view to_string(Criterion criterion) {
  return criterion == Criterion::pareto ? "pareto" : "utility";
}

Criterion parse_criterion(std::string_view text) {
  if (text == "pareto") return Criterion::pareto;
  if (text == "utility") return Criterion::utility;
  throw Error(ErrorCode::config, "unknown criterion '" + std::string(text) + "'", "criterion");
}

}  // namespace critique
