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

#include "critique/suggest.hpp"

#include <algorithm>
#include <cmath>

#include "critique/error.hpp"

namespace critique {

const FamilyChoice& SuggestionConfig::family_for(std::string_view attr) const {
  auto it = families.find(std::string(attr));
  return it == families.end() ? default_family : it->second;
}

double SuggestionConfig::attribute_prior_for(const AttributeSchema& attribute) const {
  auto it = attribute_prior.find(attribute.name);
  return it == attribute_prior.end() ? attribute.prior_weight : it->second;
}

double SuggestionConfig::value_prior_for(const AttributeSchema& attribute, std::size_t label) const {
  auto it = value_prior.find(attribute.name);
  if (it == value_prior.end()) return attribute.prior_of(label);
  return it->second.at(label);
}

void SuggestionConfig::validate() const {
  if (set_size < 1) throw Error(ErrorCode::config, "set size must be at least 1", "set_size");
  if (!(polarity_weight >= 0.0 && polarity_weight <= 1.0)) {
    throw Error(ErrorCode::config, "polarity weight must lie in [0, 1]", "polarity_weight");
  }
  if (!(counting_pd > 0.0 && counting_pd < 1.0)) {
    throw Error(ErrorCode::config, "counting p_d must lie in (0, 1)", "counting_pd");
  }
  if (diversity_pool < 1) throw Error(ErrorCode::config, "diversity pool must be positive", "diversity_pool");
  for (const auto& [name, p] : attribute_prior) {
    if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::config, "attribute prior outside [0, 1]", name);
  }
  for (const auto& [name, dist] : value_prior) {
    double total = 0.0;
    for (double p : dist) {
      if (!(p >= 0.0)) throw Error(ErrorCode::config, "negative value prior", name);
      total += p;
    }
    if (std::abs(total - 1.0) > 1e-9) throw Error(ErrorCode::config, "value prior does not sum to 1", name);
  }
  auto check_family = [](const FamilyChoice& f, const std::string& field) {
    if (!(f.tolerance >= 0.0)) throw Error(ErrorCode::config, "tolerance must be non-negative", field);
    if (f.family == NumericFamily::peaked && !(f.tolerance > 0.0)) {
      throw Error(ErrorCode::config, "peaked family needs a positive tolerance", field);
    }
  };
  check_family(default_family, "default_family");
  for (const auto& [name, f] : families) check_family(f, name);
}

DominatorBounds dominator_bounds(const Catalog& catalog, const DominanceIndex& index,
                                 std::size_t option, std::size_t attribute,
                                 const kernels::KernelTable& kernels) {
  const auto values = catalog.column(attribute);
  const auto relation = index.relation_row(option);
  const double pivot = values[option];
  const auto raw = kernels.row_bounds(values.data(), relation.data(), values.size(), pivot);
  DominatorBounds b;
  b.value = pivot;
  b.dominator_count = raw.dominator_count;
  b.dominator_shares_value = raw.dominator_at_pivot;
  if (raw.dominator_count > 0) {
    b.l = raw.dominator_min;
    b.h = raw.dominator_max;
  }
  if (std::isfinite(raw.related_below)) b.g = raw.related_below;
  if (std::isfinite(raw.related_above)) b.s = raw.related_above;
  return b;
}

DominatorBounds pairwise_bounds(double value, double other) {
  DominatorBounds b;
  b.value = value;
  b.l = other;
  b.h = other;
  b.dominator_count = 1;
  b.dominator_shares_value = other == value;
  if (other < value) b.g = other;
  if (other > value) b.s = other;
  return b;
}

double delta_qualitative(const DominatorBounds& bounds, double prior) {
  return bounds.dominator_shares_value ? 0.0 : prior;
}

double delta_directional(const DominatorBounds& bounds, double polarity_weight) {
  double d = 0.0;
  if (bounds.l && bounds.value < *bounds.l) d += polarity_weight;
  if (bounds.h && bounds.value > *bounds.h) d += 1.0 - polarity_weight;
  return d;
}

namespace {

void require_range(const AttributeSchema& attribute) {
  if (!(attribute.range() > 0.0)) {
    throw Error(ErrorCode::domain, "attribute range must be positive", attribute.name);
  }
}

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace

double delta_threshold(const DominatorBounds& bounds, const AttributeSchema& attribute,
                       double tolerance, double polarity_weight) {
  require_range(attribute);
  const double a = bounds.value;
  double less = 0.0;
  double greater = 0.0;
  // θ must make o acceptable while every dominator is strictly worse.
  if (bounds.l && a < *bounds.l) {
    less = std::min(*bounds.l, attribute.hi) - std::max(a - tolerance, attribute.lo);
  }
  if (bounds.h && a > *bounds.h) {
    greater = std::min(a + tolerance, attribute.hi) - std::max(*bounds.h, attribute.lo);
  }
  less = std::max(less, 0.0);
  greater = std::max(greater, 0.0);
  return clamp01((polarity_weight * less + (1.0 - polarity_weight) * greater) / attribute.range());
}

double delta_peaked(const DominatorBounds& bounds, const AttributeSchema& attribute,
                    double tolerance) {
  require_range(attribute);
  if (!(tolerance > 0.0)) throw Error(ErrorCode::domain, "peaked tolerance must be positive", attribute.name);
  if (bounds.dominator_shares_value) return 0.0;
  const double a = bounds.value;
  const double m1 = bounds.g ? (a + *bounds.g) / 2.0 : attribute.lo;
  const double m2 = bounds.s ? (a + *bounds.s) / 2.0 : attribute.hi;
  const double lower = std::max({m1, a - tolerance, attribute.lo});
  const double upper = std::min({m2, a + tolerance, attribute.hi});
  return clamp01(std::max(0.0, upper - lower) / attribute.range());
}

double delta_for(const DominatorBounds& bounds, const AttributeSchema& attribute,
                 const SuggestionConfig& config) {
  if (!attribute.is_numeric()) {
    return delta_qualitative(bounds,
                             config.value_prior_for(attribute, static_cast<std::size_t>(bounds.value)));
  }
  const auto& family = config.family_for(attribute.name);
  switch (family.family) {
    case NumericFamily::threshold:
      return delta_threshold(bounds, attribute, family.tolerance, config.polarity_weight);
    case NumericFamily::directional:
      return delta_directional(bounds, config.polarity_weight);
    case NumericFamily::peaked:
      return delta_peaked(bounds, attribute, family.tolerance);
  }
  return 0.0;
}

std::vector<SuggestionScore> counting_scores(const DominanceIndex& index) {
  std::vector<SuggestionScore> scores(index.size());
  for (std::size_t o = 0; o < index.size(); ++o) {
    auto& s = scores[o];
    s.option = o;
    s.dominators = index.dominators(o).size();
    s.fc = s.dominators + index.equals(o).size();
    s.eligible = s.dominators > 0;
  }
  return scores;
}

namespace {

std::vector<std::size_t> unstated_attributes(const Catalog& catalog, const PreferenceModel& model) {
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < catalog.attribute_count(); ++a) {
    if (!model.states(catalog.attribute(a).name)) out.push_back(a);
  }
  return out;
}

double combine(const std::vector<double>& terms, HiddenPrefMode mode) {
  if (mode == HiddenPrefMode::single) {
    double total = 0.0;
    for (double t : terms) total += t;
    return clamp01(total);
  }
  double miss = 1.0;
  for (double t : terms) miss *= 1.0 - t;
  return clamp01(1.0 - miss);
}

}  // namespace

std::vector<SuggestionScore> probabilistic_scores(const DominanceIndex& index, const Catalog& catalog,
                                                  const PreferenceModel& model,
                                                  const SuggestionConfig& config,
                                                  const kernels::KernelTable& kernels) {
  const auto hidden = unstated_attributes(catalog, model);
  if (hidden.empty()) {
    throw Error(ErrorCode::no_suggestion, "every attribute already carries a preference");
  }
  const bool independent = config.strategy == Strategy::prob_independent;
  auto scores = counting_scores(index);
  std::vector<double> terms;
  for (auto& s : scores) {
    s.delta.assign(catalog.attribute_count(), 0.0);
    if (!s.eligible) continue;
    terms.clear();
    for (std::size_t a : hidden) {
      const auto& attribute = catalog.attribute(a);
      double d;
      if (independent) {
        const auto values = catalog.column(a);
        d = 1.0;
        for (auto j : index.dominators(s.option)) {
          d *= delta_for(pairwise_bounds(values[s.option], values[j]), attribute, config);
          if (d == 0.0) break;
        }
      } else {
        d = delta_for(dominator_bounds(catalog, index, s.option, a, kernels), attribute, config);
      }
      s.delta[a] = d;
      terms.push_back(config.attribute_prior_for(attribute) * d);
    }
    s.fp = combine(terms, config.mode);
  }
  return scores;
}

std::vector<std::size_t> rank_suggestions(const std::vector<SuggestionScore>& scores,
                                          const Catalog& catalog, Strategy strategy) {
  std::vector<std::size_t> order;
  for (const auto& s : scores) {
    if (s.eligible) order.push_back(s.option);
  }
  const bool counting = strategy == Strategy::counting;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& sa = scores[a];
    const auto& sb = scores[b];
    if (counting) {
      if (sa.fc != sb.fc) return sa.fc < sb.fc;
    } else if (sa.fp != sb.fp) {
      return sa.fp > sb.fp;
    }
    return catalog.option(a).id < catalog.option(b).id;
  });
  return order;
}

double group_opt_probability(const std::vector<std::size_t>& group,
                             const std::vector<SuggestionScore>& scores, const Catalog& catalog,
                             const PreferenceModel& model, const SuggestionConfig& config) {
  if (group.empty()) throw Error(ErrorCode::config, "group must not be empty");
  if (config.strategy == Strategy::counting) {
    double miss = 1.0;
    for (auto o : group) miss *= 1.0 - std::pow(config.counting_pd, static_cast<double>(scores.at(o).fc));
    return clamp01(1.0 - miss);
  }
  std::vector<double> terms;
  for (std::size_t a : unstated_attributes(catalog, model)) {
    double none = 1.0;
    for (auto o : group) {
      const auto& d = scores.at(o).delta;
      none *= 1.0 - (d.empty() ? 0.0 : d[a]);
    }
    terms.push_back(config.attribute_prior_for(catalog.attribute(a)) * (1.0 - none));
  }
  return combine(terms, config.mode);
}

std::string_view to_string(Strategy strategy) {
  switch (strategy) {
    case Strategy::counting: return "counting";
    case Strategy::prob_independent: return "prob1";
    case Strategy::prob_joint: return "prob2";
    case Strategy::random: return "random";
    case Strategy::extremes: return "extremes";
    case Strategy::diversity: return "diversity";
  }
  return "unknown";
}

Strategy parse_strategy(std::string_view text) {
  if (text == "counting") return Strategy::counting;
  if (text == "prob1" || text == "prob_independent") return Strategy::prob_independent;
  if (text == "prob2" || text == "prob" || text == "prob_joint") return Strategy::prob_joint;
  if (text == "random") return Strategy::random;
  if (text == "extremes" || text == "extreme") return Strategy::extremes;
  if (text == "diversity") return Strategy::diversity;
  throw Error(ErrorCode::config, "unknown strategy '" + std::string(text) + "'", "strategy");
}

bool model_based(Strategy strategy) {
  return strategy == Strategy::counting || strategy == Strategy::prob_independent ||
         strategy == Strategy::prob_joint;
}

}  // namespace critique
