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


// Fixtures and independent oracles shared by the unit tests and the
// acceptance runner. Nothing here calls the dominance index or the δ code.

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "critique/catalog.hpp"
#include "critique/dominance.hpp"
#include "critique/preference.hpp"
#include "critique/random_catalog.hpp"
#include "critique/suggest.hpp"

namespace critique::testing {

inline std::filesystem::path data_dir() { return CRITIQUE_DATA_DIR; }
inline std::filesystem::path fixture_dir() { return CRITIQUE_FIXTURE_DIR; }

inline Catalog housing() { return load_catalog_file(data_dir() / "housing.json"); }
inline Catalog housing_pinned() { return load_catalog_file(data_dir() / "housing_pinned.json"); }

inline AttributeSchema numeric(std::string name, double lo, double hi) {
  AttributeSchema a;
  a.name = std::move(name);
  a.lo = lo;
  a.hi = hi;
  return a;
}

inline AttributeSchema qualitative(std::string name, std::vector<std::string> values) {
  AttributeSchema a;
  a.name = std::move(name);
  a.kind = AttributeKind::qualitative;
  a.values = std::move(values);
  return a;
}

inline Preference cheaper() { return {"rent", Directional{Direction::smaller_better}, 1}; }
inline PreferenceModel cheaper_model() { return {{cheaper()}, Combinator::weighted_sum}; }

inline std::size_t id(const Catalog& catalog, const std::string& option) {
  return *catalog.find_option(option);
}

inline std::vector<std::string> ids(const Catalog& catalog, const std::vector<std::size_t>& idx) {
  std::vector<std::string> out;
  for (auto i : idx) out.push_back(catalog.option(i).id);
  return out;
}

// Pairwise relation by definition: dominators[o] and equals[o] (self excluded).
struct BruteRelation {
  std::vector<std::vector<std::size_t>> dominators;
  std::vector<std::vector<std::size_t>> equals;
};

inline bool same_costs(const PreferenceModel& model, const Catalog& catalog, std::size_t a,
                       std::size_t b) {
  for (const auto& p : model.preferences) {
    if (cost(p, catalog, catalog.option(a)) != cost(p, catalog, catalog.option(b))) return false;
  }
  return true;
}

inline BruteRelation brute_pareto(const PreferenceModel& model, const Catalog& catalog) {
  BruteRelation r;
  r.dominators.resize(catalog.size());
  r.equals.resize(catalog.size());
  for (std::size_t o = 0; o < catalog.size(); ++o) {
    for (std::size_t j = 0; j < catalog.size(); ++j) {
      if (j == o) continue;
      if (pareto_dominates(model, catalog, catalog.option(j), catalog.option(o))) {
        r.dominators[o].push_back(j);
      } else if (same_costs(model, catalog, j, o)) {
        r.equals[o].push_back(j);
      }
    }
  }
  return r;
}

inline BruteRelation brute_utility(const PreferenceModel& model, const Catalog& catalog) {
  BruteRelation r;
  r.dominators.resize(catalog.size());
  r.equals.resize(catalog.size());
  std::vector<double> u;
  for (const auto& o : catalog.options()) u.push_back(utility(model, catalog, o));
  for (std::size_t o = 0; o < catalog.size(); ++o) {
    for (std::size_t j = 0; j < catalog.size(); ++j) {
      if (j == o) continue;
      if (u[j] > u[o]) r.dominators[o].push_back(j);
      else if (u[j] == u[o]) r.equals[o].push_back(j);
    }
  }
  return r;
}

inline bool pareto_optimal(const PreferenceModel& model, const Catalog& catalog, std::size_t o) {
  for (std::size_t j = 0; j < catalog.size(); ++j) {
    if (j != o && pareto_dominates(model, catalog, catalog.option(j), catalog.option(o))) {
      return false;
    }
  }
  return true;
}

// A random instance for dominance and δ checks: real-valued stated
// attributes (ties have probability zero) plus one real, one integer and
// one qualitative attribute left unstated.
struct Instance {
  Catalog catalog;
  PreferenceModel model;
};

inline Instance random_instance(std::uint64_t seed, std::size_t n, std::size_t stated) {
  CatalogSpec spec;
  spec.n = n;
  spec.attributes = parse_attribute_mix(std::to_string(stated) + "real+1real+1int+1qual");
  Instance inst{generate_random_catalog(spec, seed), {}};
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_int_distribution<int> weight(1, 5);
  std::bernoulli_distribution coin(0.5);
  for (std::size_t a = 0; a < stated; ++a) {
    auto dir = coin(rng) ? Direction::smaller_better : Direction::larger_better;
    inst.model.preferences.push_back({"a" + std::to_string(a), Directional{dir}, weight(rng)});
  }
  return inst;
}

// Hidden preference drawn the way the δ formulas assume: θ uniform over the
// domain (or from the value prior), polarity with probability pw.
inline Preference draw_hidden(const AttributeSchema& attribute, const SuggestionConfig& config,
                              std::mt19937_64& rng) {
  Preference p;
  p.attr = attribute.name;
  if (!attribute.is_numeric()) {
    std::vector<double> w;
    for (std::size_t v = 0; v < attribute.values.size(); ++v) {
      w.push_back(config.value_prior_for(attribute, v));
    }
    std::discrete_distribution<std::size_t> pick(w.begin(), w.end());
    p.variant = QualitativeValue{attribute.values[pick(rng)]};
    return p;
  }
  std::uniform_real_distribution<double> theta(attribute.lo, attribute.hi);
  std::bernoulli_distribution first(config.polarity_weight);
  const auto& fam = config.family_for(attribute.name);
  switch (fam.family) {
    case NumericFamily::directional:
      p.variant = Directional{first(rng) ? Direction::smaller_better : Direction::larger_better};
      break;
    case NumericFamily::threshold: {
      bool less = first(rng);
      p.variant = Threshold{less ? Polarity::less_than : Polarity::greater_than, theta(rng),
                            fam.tolerance};
      break;
    }
    case NumericFamily::peaked:
      p.variant = Peaked{theta(rng), fam.tolerance};
      break;
  }
  return p;
}

// Fraction of hidden-preference draws on `attribute` under which `option`
// is no longer dominated by anything, i.e. the quantity δ estimates.
inline double monte_carlo_delta(const Catalog& catalog, const PreferenceModel& model,
                                std::size_t option, std::size_t attribute,
                                const SuggestionConfig& config, std::size_t samples,
                                std::uint64_t seed) {
  auto rel = brute_pareto(model, catalog);
  const auto& schema = catalog.attribute(attribute);
  auto column = catalog.column(attribute);
  std::mt19937_64 rng(seed);
  std::size_t hits = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    auto r = draw_hidden(schema, config, rng);
    double mine = cost(r, schema, column[option]);
    bool free = true;
    for (auto d : rel.dominators[option]) {
      if (!(cost(r, schema, column[d]) > mine)) {
        free = false;
        break;
      }
    }
    if (free) {
      for (auto e : rel.equals[option]) {
        if (cost(r, schema, column[e]) < mine) {
          free = false;
          break;
        }
      }
    }
    hits += free ? 1 : 0;
  }
  return static_cast<double>(hits) / static_cast<double>(samples);
}

// p_opt(G) by simulation: each unstated attribute carries a hidden
// preference with its prior; given one, every member of G draws its own θ
// (members are treated as independent) and success means some member is no
// longer dominated.
inline double monte_carlo_group(const Catalog& catalog, const PreferenceModel& model,
                                const std::vector<std::size_t>& group,
                                const SuggestionConfig& config, std::size_t samples,
                                std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::size_t hits = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    bool any = false;
    for (std::size_t a = 0; a < catalog.attribute_count() && !any; ++a) {
      const auto& schema = catalog.attribute(a);
      if (model.states(schema.name)) continue;
      if (unit(rng) >= config.attribute_prior_for(schema)) continue;
      for (auto o : group) {
        PreferenceModel extended = model;
        extended.preferences.push_back(draw_hidden(schema, config, rng));
        if (pareto_optimal(extended, catalog, o)) {
          any = true;
          break;
        }
      }
    }
    hits += any ? 1 : 0;
  }
  return static_cast<double>(hits) / static_cast<double>(samples);
}

struct DeltaCase {
  std::uint64_t seed = 0;
  std::string option;
  double closed_form = 0.0;
  double simulated = 0.0;
};

// Closed-form δ next to its simulation for `instances` random instances of
// one family ("qualitative", "directional", "threshold" or "peaked").
inline std::vector<DeltaCase> delta_oracle_cases(const std::string& family, std::size_t instances,
                                                 std::size_t samples, std::uint64_t seed) {
  std::vector<DeltaCase> cases;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::uint64_t k = 0; cases.size() < instances; ++k) {
    auto inst_seed = seed * 1000 + k;
    auto inst = random_instance(inst_seed, 12 + k % 30, 2);
    const auto& c = inst.catalog;
    auto rel = brute_pareto(inst.model, c);
    std::vector<std::size_t> dominated;
    for (std::size_t o = 0; o < c.size(); ++o) {
      if (!rel.dominators[o].empty()) dominated.push_back(o);
    }
    if (dominated.empty()) continue;
    auto option = dominated[rng() % dominated.size()];

    SuggestionConfig config;
    config.polarity_weight = 0.2 + 0.6 * unit(rng);
    std::size_t attr = 2 + rng() % 2;  // real or integer
    if (family == "qualitative") {
      attr = 4;
      std::vector<double> prior(4);
      double total = 0.0;
      for (auto& p : prior) total += (p = 0.05 + unit(rng));
      for (auto& p : prior) p /= total;
      config.value_prior[c.attribute(attr).name] = prior;
    } else if (family == "directional") {
      config.default_family = {NumericFamily::directional, 0.0};
    } else if (family == "threshold") {
      config.default_family = {NumericFamily::threshold, 0.2 * unit(rng) * c.attribute(attr).range()};
    } else {
      config.default_family = {NumericFamily::peaked, (0.02 + 0.5 * unit(rng)) * c.attribute(attr).range()};
    }
    auto index = build_dominance_index(inst.model, c, Criterion::pareto);
    auto bounds = dominator_bounds(c, index, option, attr);
    DeltaCase dc;
    dc.seed = inst_seed;
    dc.option = c.option(option).id + "/" + c.attribute(attr).name;
    dc.closed_form = delta_for(bounds, c.attribute(attr), config);
    dc.simulated = monte_carlo_delta(c, inst.model, option, attr, config, samples, inst_seed + 17);
    cases.push_back(dc);
  }
  return cases;
}

struct SoundnessReport {
  std::size_t newly_optimal = 0;
  std::size_t zero_delta = 0;  // newly optimal options scored δ = 0 on the added attribute
};

// Adds one random hidden preference to random instances and checks that
// every option it turns Pareto-optimal had a positive δ on that attribute.
inline SoundnessReport look_ahead_soundness(std::size_t instances, std::uint64_t seed) {
  SoundnessReport report;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const NumericFamily families[] = {NumericFamily::threshold, NumericFamily::directional,
                                    NumericFamily::peaked};
  for (std::size_t k = 0; k < instances; ++k) {
    auto inst = random_instance(seed * 7919 + k, 10 + k % 40, 2);
    const auto& c = inst.catalog;
    SuggestionConfig config;
    config.polarity_weight = 0.2 + 0.6 * unit(rng);
    auto family = families[k % 3];
    double t = family == NumericFamily::directional ? 0.0 : (0.01 + 0.3 * unit(rng)) * 100.0;
    config.default_family = {family, t};
    auto index = build_dominance_index(inst.model, c, Criterion::pareto);
    auto scores = probabilistic_scores(index, c, inst.model, config);
    for (std::size_t attr = 2; attr < c.attribute_count(); ++attr) {
      PreferenceModel extended = inst.model;
      extended.preferences.push_back(draw_hidden(c.attribute(attr), config, rng));
      for (std::size_t o = 0; o < c.size(); ++o) {
        if (!index.dominated(o) || !pareto_optimal(extended, c, o)) continue;
        ++report.newly_optimal;
        if (!(scores[o].delta[attr] > 0.0)) ++report.zero_delta;
      }
    }
  }
  return report;
}

}  // namespace critique::testing
