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

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "critique/error.hpp"
#include "critique/suggest.hpp"

namespace critique {

namespace {

std::vector<bool> mask_of(const std::vector<std::size_t>& ids, std::size_t n) {
  std::vector<bool> mask(n, false);
  for (auto i : ids) {
    if (i < n) mask[i] = true;
  }
  return mask;
}

bool id_less(const Catalog& catalog, std::size_t a, std::size_t b) {
  return catalog.option(a).id < catalog.option(b).id;
}

std::vector<std::size_t> greedy_model_based(const Catalog& catalog, const PreferenceModel& model,
                                            const DominanceIndex& index,
                                            const SuggestionConfig& config,
                                            const std::vector<bool>& excluded) {
  const auto scores = config.strategy == Strategy::counting
                          ? counting_scores(index)
                          : probabilistic_scores(index, catalog, model, config);
  std::vector<std::size_t> pool;
  for (const auto& s : scores) {
    if (s.eligible && !excluded[s.option]) pool.push_back(s.option);
  }
  std::vector<std::size_t> chosen;
  std::vector<bool> taken(catalog.size(), false);
  while (chosen.size() < config.set_size && chosen.size() < pool.size()) {
    std::size_t best = pool.size();
    double best_value = -1.0;
    std::vector<std::size_t> trial = chosen;
    trial.push_back(0);
    for (std::size_t i = 0; i < pool.size(); ++i) {
      const auto o = pool[i];
      if (taken[o]) continue;
      trial.back() = o;
      const double value = group_opt_probability(trial, scores, catalog, model, config);
      bool better = best == pool.size() || value > best_value;
      if (!better && value == best_value) {
        const auto& cur = scores[pool[best]];
        const auto& cand = scores[o];
        if (config.strategy == Strategy::counting) {
          better = cand.fc < cur.fc || (cand.fc == cur.fc && id_less(catalog, o, pool[best]));
        } else {
          better = cand.fp > cur.fp || (cand.fp == cur.fp && id_less(catalog, o, pool[best]));
        }
      }
      if (better) {
        best = i;
        best_value = value;
      }
    }
    taken[pool[best]] = true;
    chosen.push_back(pool[best]);
  }
  return chosen;
}

std::vector<std::size_t> random_choice(const Catalog& catalog, const SuggestionConfig& config,
                                       const std::vector<bool>& excluded) {
  std::vector<std::size_t> pool;
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    if (!excluded[i]) pool.push_back(i);
  }
  std::mt19937_64 rng(config.seed);
  const std::size_t count = std::min(config.set_size, pool.size());
  for (std::size_t i = 0; i < count; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
    std::swap(pool[i], pool[pick(rng)]);
  }
  pool.resize(count);
  return pool;
}

std::vector<std::size_t> extremes_choice(const Catalog& catalog, const PreferenceModel& model,
                                         const SuggestionConfig& config,
                                         const std::vector<bool>& excluded) {
  std::vector<std::size_t> attrs;
  for (std::size_t a = 0; a < catalog.attribute_count(); ++a) {
    const auto& attribute = catalog.attribute(a);
    if (attribute.is_numeric() && !model.states(attribute.name)) attrs.push_back(a);
  }
  std::vector<bool> used = excluded;
  std::vector<std::size_t> chosen;
  auto remaining = static_cast<std::size_t>(std::count(used.begin(), used.end(), false));
  auto take_extreme = [&](std::size_t a, bool maximum) {
    const auto values = catalog.column(a);
    std::size_t best = catalog.size();
    for (std::size_t i = 0; i < catalog.size(); ++i) {
      if (used[i]) continue;
      if (best == catalog.size()) {
        best = i;
        continue;
      }
      const bool beyond = maximum ? values[i] > values[best] : values[i] < values[best];
      if (beyond || (values[i] == values[best] && id_less(catalog, i, best))) best = i;
    }
    used[best] = true;
    --remaining;
    chosen.push_back(best);
  };
  while (!attrs.empty() && remaining > 0 && chosen.size() < config.set_size) {
    for (std::size_t a : attrs) {
      for (bool maximum : {false, true}) {
        if (remaining == 0 || chosen.size() >= config.set_size) break;
        take_extreme(a, maximum);
      }
    }
  }
  return chosen;
}

double option_distance(const Catalog& catalog, std::size_t x, std::size_t y) {
  double total = 0.0;
  for (std::size_t a = 0; a < catalog.attribute_count(); ++a) {
    const auto& attribute = catalog.attribute(a);
    const auto values = catalog.column(a);
    if (attribute.is_numeric()) {
      total += std::abs(values[x] - values[y]) / attribute.range();
    } else {
      total += values[x] == values[y] ? 0.0 : 1.0;
    }
  }
  return total / static_cast<double>(catalog.attribute_count());
}

std::vector<std::size_t> diversity_choice(const Catalog& catalog, const PreferenceModel& model,
                                          const SuggestionConfig& config,
                                          const std::vector<std::size_t>& exclude,
                                          const std::vector<bool>& excluded) {
  std::vector<std::size_t> pool;
  for (auto o : rank_by_utility(utilities(model, catalog), catalog)) {
    if (pool.size() >= config.diversity_pool) break;
    if (!excluded[o]) pool.push_back(o);
  }
  // Distance of each pool member to the nearest shown option.
  std::vector<double> nearest(pool.size(), std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < pool.size(); ++i) {
    for (auto e : exclude) {
      if (e < catalog.size()) nearest[i] = std::min(nearest[i], option_distance(catalog, pool[i], e));
    }
  }
  std::vector<std::size_t> chosen;
  std::vector<bool> taken(pool.size(), false);
  while (chosen.size() < config.set_size && chosen.size() < pool.size()) {
    std::size_t best = pool.size();
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (taken[i]) continue;
      if (best == pool.size() || nearest[i] > nearest[best]) best = i;
    }
    taken[best] = true;
    chosen.push_back(pool[best]);
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (!taken[i]) nearest[i] = std::min(nearest[i], option_distance(catalog, pool[i], pool[best]));
    }
  }
  return chosen;
}

}  // namespace

std::vector<std::size_t> select_suggestions(const Catalog& catalog, const PreferenceModel& model,
                                            const DominanceIndex& index,
                                            const SuggestionConfig& config,
                                            const std::vector<std::size_t>& exclude) {
  config.validate();
  if (index.size() != catalog.size()) {
    throw Error(ErrorCode::config, "dominance index does not match the catalog");
  }
  const auto excluded = mask_of(exclude, catalog.size());
  switch (config.strategy) {
    case Strategy::counting:
    case Strategy::prob_independent:
    case Strategy::prob_joint:
      return greedy_model_based(catalog, model, index, config, excluded);
    case Strategy::random:
      return random_choice(catalog, config, excluded);
    case Strategy::extremes:
      return extremes_choice(catalog, model, config, excluded);
    case Strategy::diversity:
      return diversity_choice(catalog, model, config, exclude, excluded);
  }
  return {};
}

}  // namespace critique
