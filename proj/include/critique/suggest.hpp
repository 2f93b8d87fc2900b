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
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "critique/catalog.hpp"
#include "critique/dominance.hpp"
#include "critique/kernels.hpp"
#include "critique/preference.hpp"

namespace critique {

enum class Strategy { counting, prob_independent, prob_joint, random, extremes, diversity };

// multi: any number of hidden preferences (product form).
// single: exactly one hidden preference (sum form).
enum class HiddenPrefMode { multi, single };

// Family assumed for a hidden preference on a numeric attribute.
enum class NumericFamily { threshold, directional, peaked };

struct FamilyChoice {
  NumericFamily family = NumericFamily::threshold;
  double tolerance = 0.0;
};

struct SuggestionConfig {
  Strategy strategy = Strategy::prob_joint;
  Criterion criterion = Criterion::pareto;
  std::size_t set_size = 1;
  HiddenPrefMode mode = HiddenPrefMode::multi;
  // Overrides of the schema priors, keyed by attribute name.
  std::map<std::string, double> attribute_prior;
  std::map<std::string, std::vector<double>> value_prior;
  FamilyChoice default_family;
  std::map<std::string, FamilyChoice> families;
  // Probability of the less_than / smaller_better polarity.
  double polarity_weight = 0.5;
  // Constant per-option probability used by the counting set objective.
  double counting_pd = 0.5;
  std::size_t diversity_pool = 20;
  std::uint64_t seed = 0;

  const FamilyChoice& family_for(std::string_view attr) const;
  double attribute_prior_for(const AttributeSchema& attribute) const;
  double value_prior_for(const AttributeSchema& attribute, std::size_t label) const;
  void validate() const;
};

/// Values of the options in O^>(o) and O^=(o) on one attribute, relative to
/// a_i(o). Absent optionals mean the bound is undefined.
struct DominatorBounds {
  double value = 0.0;
  std::optional<double> l;  // min over dominators
  std::optional<double> h;  // max over dominators
  std::optional<double> g;  // greatest related value below `value`
  std::optional<double> s;  // smallest related value above `value`
  bool dominator_shares_value = false;
  std::size_t dominator_count = 0;
};

DominatorBounds dominator_bounds(const Catalog& catalog, const DominanceIndex& index,
                                 std::size_t option, std::size_t attribute,
                                 const kernels::KernelTable& kernels = kernels::active_kernels());

// Bounds for a single dominating option with value `other`.
DominatorBounds pairwise_bounds(double value, double other);

double delta_qualitative(const DominatorBounds& bounds, double prior);
double delta_directional(const DominatorBounds& bounds, double polarity_weight);
double delta_threshold(const DominatorBounds& bounds, const AttributeSchema& attribute,
                       double tolerance, double polarity_weight);
double delta_peaked(const DominatorBounds& bounds, const AttributeSchema& attribute,
                    double tolerance);

// δ for one attribute under the family the config assigns to it.
double delta_for(const DominatorBounds& bounds, const AttributeSchema& attribute,
                 const SuggestionConfig& config);

struct SuggestionScore {
  std::size_t option = 0;
  std::size_t dominators = 0;  // |O^>|
  std::size_t fc = 0;          // |O^>| + |O^=|
  double fp = 0.0;
  std::vector<double> delta;  // per schema attribute, 0 where a preference is stated
  // Only options with a non-empty dominating set can become newly optimal.
  bool eligible = false;
};

std::vector<SuggestionScore> counting_scores(const DominanceIndex& index);

// Throws Error(no_suggestion) when every attribute carries a preference.
std::vector<SuggestionScore> probabilistic_scores(
    const DominanceIndex& index, const Catalog& catalog, const PreferenceModel& model,
    const SuggestionConfig& config,
    const kernels::KernelTable& kernels = kernels::active_kernels());

// Eligible options, best first: ascending F_C for counting, descending F_P
// otherwise; ties by ascending id.
std::vector<std::size_t> rank_suggestions(const std::vector<SuggestionScore>& scores,
                                          const Catalog& catalog, Strategy strategy);

// Probability that at least one member of `group` becomes optimal.
double group_opt_probability(const std::vector<std::size_t>& group,
                             const std::vector<SuggestionScore>& scores, const Catalog& catalog,
                             const PreferenceModel& model, const SuggestionConfig& config);

/// Chooses up to config.set_size suggestions, never one listed in `exclude`.
/// Model-based strategies fill the set greedily on the group objective.
std::vector<std::size_t> select_suggestions(const Catalog& catalog, const PreferenceModel& model,
                                            const DominanceIndex& index,
                                            const SuggestionConfig& config,
                                            const std::vector<std::size_t>& exclude = {});

std::string_view to_string(Strategy strategy);
// Accepts counting, prob1, prob2, prob (= prob2), random, extremes,
// diversity and the enum spellings.
Strategy parse_strategy(std::string_view text);
bool model_based(Strategy strategy);

}  // namespace critique
