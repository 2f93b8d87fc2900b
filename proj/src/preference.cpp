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

#include "critique/preference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "critique/error.hpp"

namespace critique {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool wants_qualitative(const PreferenceVariant& variant) {
  return std::holds_alternative<QualitativeValue>(variant);
}

// Ramp of length `tolerance` starting at `excess` = 0. Zero tolerance is a
// step: 0/0 -> 0, positive/0 -> 1.
double ramp(double excess, double tolerance) {
  if (excess <= 0.0) return 0.0;
  if (tolerance <= 0.0) return 1.0;
  return std::min(1.0, excess / tolerance);
}

}  // namespace

bool PreferenceModel::states(std::string_view attr) const {
  return std::any_of(preferences.begin(), preferences.end(),
                     [&](const Preference& p) { return p.attr == attr; });
}

void validate(const Preference& pref, const Catalog& catalog) {
  auto index = catalog.find_attribute(pref.attr);
  if (!index) {
    throw Error(ErrorCode::validation, "unknown attribute '" + pref.attr + "'", pref.attr);
  }
  const auto& attribute = catalog.attribute(*index);
  if (pref.weight < 1 || pref.weight > 5) {
    throw Error(ErrorCode::validation, "weight of '" + pref.attr + "' must be in 1..5", "weight");
  }
  if (wants_qualitative(pref.variant) == attribute.is_numeric()) {
    throw Error(ErrorCode::type,
                "preference kind does not match attribute '" + pref.attr + "'", pref.attr);
  }
  std::visit(overloaded{
                 [&](const QualitativeValue& q) {
                   if (!attribute.label_index(q.theta)) {
                     throw Error(ErrorCode::validation,
                                 "'" + q.theta + "' is not a value of '" + pref.attr + "'", "theta");
                   }
                 },
                 [&](const Directional&) {},
                 [&](const Threshold& t) {
                   if (!(t.theta >= attribute.lo && t.theta <= attribute.hi)) {
                     throw Error(ErrorCode::validation,
                                 "theta is outside the domain of '" + pref.attr + "'", "theta");
                   }
                   if (!(t.tolerance >= 0.0) || !std::isfinite(t.tolerance)) {
                     throw Error(ErrorCode::validation, "tolerance must be >= 0", "tolerance_t");
                   }
                 },
                 [&](const Peaked& p) {
                   if (!(p.theta >= attribute.lo && p.theta <= attribute.hi)) {
                     throw Error(ErrorCode::validation,
                                 "theta is outside the domain of '" + pref.attr + "'", "theta");
                   }
                   if (!(p.tolerance > 0.0) || !std::isfinite(p.tolerance)) {
                     throw Error(ErrorCode::validation, "peaked tolerance must be > 0", "tolerance_t");
                   }
                 },
             },
             pref.variant);
}

void validate(const PreferenceModel& model, const Catalog& catalog) {
  std::set<std::string> directional;
  for (const auto& pref : model.preferences) {
    validate(pref, catalog);
    if (std::holds_alternative<Directional>(pref.variant) && !directional.insert(pref.attr).second) {
      throw Error(ErrorCode::validation,
                  "more than one directional preference on '" + pref.attr + "'", pref.attr);
    }
  }
}

double cost(const Preference& pref, const AttributeSchema& attribute, double x) {
  if (wants_qualitative(pref.variant) == attribute.is_numeric()) {
    throw Error(ErrorCode::type,
                "preference kind does not match attribute '" + attribute.name + "'", attribute.name);
  }
  return std::visit(
      overloaded{
          [&](const QualitativeValue& q) {
            auto theta = attribute.label_index(q.theta);
            if (!theta) {
              throw Error(ErrorCode::validation,
                          "'" + q.theta + "' is not a value of '" + attribute.name + "'", "theta");
            }
            return x == static_cast<double>(*theta) ? 0.0 : 1.0;
          },
          [&](const Directional& d) {
            double c = d.direction == Direction::smaller_better ? (x - attribute.lo) / attribute.range()
                                                                : (attribute.hi - x) / attribute.range();
            return std::clamp(c, 0.0, 1.0);
          },
          [&](const Threshold& t) {
            return t.polarity == Polarity::less_than ? ramp(x - t.theta, t.tolerance)
                                                     : ramp(t.theta - x, t.tolerance);
          },
          [&](const Peaked& p) { return std::min(1.0, std::abs(x - p.theta) / p.tolerance); },
      },
      pref.variant);
}

double cost(const Preference& pref, const Catalog& catalog, const OptionRecord& option) {
  auto index = catalog.attribute_index(pref.attr);
  return cost(pref, catalog.attribute(index), option.values.at(index));
}

Ordering compare(const Preference& pref, const Catalog& catalog, const OptionRecord& first,
                 const OptionRecord& second) {
  double a = cost(pref, catalog, first);
  double b = cost(pref, catalog, second);
  if (a < b) return Ordering::better;
  if (a > b) return Ordering::worse;
  return Ordering::equal;
}

double utility(const PreferenceModel& model, const Catalog& catalog, const OptionRecord& option) {
  if (model.empty()) throw Error(ErrorCode::empty_model, "utility of an empty preference model");
  if (model.combinator == Combinator::min_combinator) {
    double lowest = std::numeric_limits<double>::infinity();
    for (const auto& pref : model.preferences) {
      lowest = std::min(lowest, 1.0 - cost(pref, catalog, option));
    }
    return lowest;
  }
  double total = 0.0;
  for (const auto& pref : model.preferences) {
    total += static_cast<double>(pref.weight) * (1.0 - cost(pref, catalog, option));
  }
  return total;
}

bool pareto_dominates(const PreferenceModel& model, const Catalog& catalog,
                      const OptionRecord& first, const OptionRecord& second) {
  bool strictly = false;
  for (const auto& pref : model.preferences) {
    switch (compare(pref, catalog, first, second)) {
      case Ordering::worse: return false;
      case Ordering::better: strictly = true; break;
      case Ordering::equal: break;
    }
  }
  return strictly;
}

std::string_view to_string(Direction direction) {
  return direction == Direction::smaller_better ? "smaller_better" : "larger_better";
}

std::string_view to_string(Polarity polarity) {
  return polarity == Polarity::less_than ? "less_than" : "greater_than";
}

}  // namespace critique
