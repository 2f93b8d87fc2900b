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

#include "critique/sim.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "critique/error.hpp"

namespace critique {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

template <typename T>
void shuffle_in_place(std::vector<T>& items, std::mt19937_64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    std::swap(items[i - 1], items[pick(rng)]);
  }
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index) {
  return splitmix64(splitmix64(splitmix64(master) ^ stream) ^ index);
}

HiddenUserModel generate_hidden_model(const Catalog& catalog, std::size_t m, std::uint64_t seed,
                                      const HiddenModelOptions& options) {
  if (options.family != NumericFamily::directional && !(options.tolerance_fraction > 0.0)) {
    throw Error(ErrorCode::config, "hidden tolerance must be positive", "hidden_tolerance");
  }
  if (m < 1) throw Error(ErrorCode::config, "m must be at least 1", "m");
  if (m > catalog.attribute_count()) {
    throw Error(ErrorCode::config,
                "m = " + std::to_string(m) + " exceeds the " +
                    std::to_string(catalog.attribute_count()) + " catalog attributes",
                "m");
  }
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> attrs(catalog.attribute_count());
  std::iota(attrs.begin(), attrs.end(), 0);
  shuffle_in_place(attrs, rng);
  attrs.resize(m);

  HiddenUserModel model;
  std::uniform_int_distribution<int> weight(1, 5);
  for (auto a : attrs) {
    const auto& attribute = catalog.attribute(a);
    Preference pref;
    pref.attr = attribute.name;
    if (attribute.is_numeric()) {
      std::uniform_real_distribution<double> theta_dist(attribute.lo, attribute.hi);
      std::bernoulli_distribution low_side(0.5);
      const bool low = low_side(rng);
      const double theta = theta_dist(rng);
      const double tolerance = options.tolerance_fraction * attribute.range();
      switch (options.family) {
        case NumericFamily::threshold:
          pref.variant = Threshold{low ? Polarity::less_than : Polarity::greater_than, theta, tolerance};
          break;
        case NumericFamily::directional:
          pref.variant = Directional{low ? Direction::smaller_better : Direction::larger_better};
          break;
        case NumericFamily::peaked:
          pref.variant = Peaked{theta, tolerance};
          break;
      }
    } else {
      std::uniform_int_distribution<std::size_t> label(0, attribute.values.size() - 1);
      pref.variant = QualitativeValue{attribute.values[label(rng)]};
    }
    pref.weight = weight(rng);
    model.preferences.push_back(std::move(pref));
  }
  std::uniform_int_distribution<std::size_t> initial(0, m - 1);
  model.initial_index = initial(rng);
  return model;
}

void SimConfig::validate() const {
  if (runs < 1) throw Error(ErrorCode::config, "runs must be at least 1", "runs");
  if (m < 1) throw Error(ErrorCode::config, "m must be at least 1", "m");
  if (display_candidates + display_suggestions < 1) {
    throw Error(ErrorCode::config, "the display must show at least one option", "candidates");
  }
  if (catalog_spec && catalog_spec->n < 1) throw Error(ErrorCode::config, "catalog spec needs n >= 1", "catalog_spec");
}

std::optional<std::size_t> user_react(const Catalog& catalog, const HiddenUserModel& hidden,
                                      const PreferenceModel& stated,
                                      const std::vector<std::size_t>& display,
                                      const std::vector<std::size_t>& scan_order) {
  if (display.empty() || stated.empty()) return std::nullopt;
  const CostMatrix now(stated, catalog);
  std::vector<std::size_t> dominated;
  for (auto o : display) {
    if (pareto_dominated(now, o)) dominated.push_back(o);
  }
  if (dominated.empty()) return std::nullopt;
  for (auto r : scan_order) {
    const auto& pref = hidden.preferences.at(r);
    if (std::find(stated.preferences.begin(), stated.preferences.end(), pref) !=
        stated.preferences.end()) {
      continue;
    }
    PreferenceModel extended = stated;
    extended.preferences.push_back(pref);
    const CostMatrix next(extended, catalog);
    for (auto o : dominated) {
      if (!pareto_dominated(next, o)) return r;
    }
  }
  return std::nullopt;
}

RunRecord run_session(const Catalog& catalog, const HiddenUserModel& hidden, const SimConfig& config,
                      std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::size_t m = hidden.preferences.size();
  std::vector<std::size_t> scan_order(m);
  std::iota(scan_order.begin(), scan_order.end(), 0);
  shuffle_in_place(scan_order, rng);

  RunRecord record;
  record.strategy = config.strategy;
  record.hidden = m - 1;
  PreferenceModel stated;
  stated.preferences.push_back(hidden.preferences.at(hidden.initial_index));
  record.stated.push_back(stated.preferences.back().attr);

  SuggestionConfig scoring = config.suggestion;
  scoring.strategy = config.strategy;
  scoring.criterion = config.criterion;
  scoring.set_size = std::max<std::size_t>(config.display_suggestions, 1);

  while (stated.size() < m) {
    ++record.cycles;
    std::vector<std::size_t> display;
    if (config.display_candidates > 0) display = top_k_candidates(stated, catalog, config.display_candidates);
    scoring.seed = rng();
    if (config.display_suggestions > 0) {
      const auto index = build_dominance_index(stated, catalog, config.criterion);
      try {
        auto suggestions = select_suggestions(catalog, stated, index, scoring, display);
        display.insert(display.end(), suggestions.begin(), suggestions.end());
      } catch (const Error& e) {
        if (e.code() != ErrorCode::no_suggestion) throw;
      }
    }
    const auto reaction = user_react(catalog, hidden, stated, display, scan_order);
    if (!reaction) break;
    stated.preferences.push_back(hidden.preferences[*reaction]);
    record.stated.push_back(stated.preferences.back().attr);
    ++record.discovered;
  }
  record.found = record.discovered == record.hidden;
  return record;
}

ExperimentResult run_experiment(const SimConfig& config, const Catalog* fixture) {
  config.validate();
  if (!config.catalog_spec && fixture == nullptr) {
    throw Error(ErrorCode::config, "either a catalog or a catalog spec is required", "catalog");
  }
  ExperimentResult result;
  result.curve.assign(config.m, 0.0);
  double total = 0.0;
  for (std::size_t run = 0; run < config.runs; ++run) {
    Catalog generated;
    const Catalog* catalog = fixture;
    if (config.catalog_spec) {
      generated = generate_random_catalog(*config.catalog_spec, derive_seed(config.seed, 1, run));
      catalog = &generated;
    }
    const auto hidden =
        generate_hidden_model(*catalog, config.m, derive_seed(config.seed, 2, run), config.hidden);
    auto record = run_session(*catalog, hidden, config, derive_seed(config.seed, 3, run));
    record.run = run;
    total += record.fraction();
    for (std::size_t x = 0; x < config.m; ++x) {
      if (record.discovered >= x) result.curve[x] += 1.0;
    }
    result.runs.push_back(std::move(record));
  }
  const double runs = static_cast<double>(config.runs);
  result.mean_fraction = total / runs;
  for (auto& c : result.curve) c /= runs;
  return result;
}

}  // namespace critique
