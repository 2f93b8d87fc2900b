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
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "critique/catalog.hpp"

namespace critique {

enum class Direction { smaller_better, larger_better };
enum class Polarity { less_than, greater_than };

// Cost 0 on the preferred label, 1 elsewhere.
struct QualitativeValue {
  std::string theta;
  bool operator==(const QualitativeValue&) const = default;
};

// Monotone cost, normalized over the declared domain.
struct Directional {
  Direction direction = Direction::smaller_better;
  bool operator==(const Directional&) const = default;
};

// Graded step: zero on the acceptable side of theta, rising linearly to 1
// over `tolerance`. A zero tolerance is a plain step.
struct Threshold {
  Polarity polarity = Polarity::less_than;
  double theta = 0.0;
  double tolerance = 0.0;
  bool operator==(const Threshold&) const = default;
};

// min(1, |x - theta| / tolerance).
struct Peaked {
  double theta = 0.0;
  double tolerance = 1.0;
  bool operator==(const Peaked&) const = default;
};

using PreferenceVariant = std::variant<QualitativeValue, Directional, Threshold, Peaked>;

struct Preference {
  std::string attr;
  PreferenceVariant variant;
  int weight = 1;  // importance, 1..5

  bool operator==(const Preference&) const = default;
};

enum class Combinator { weighted_sum, min_combinator };

struct PreferenceModel {
  std::vector<Preference> preferences;
  Combinator combinator = Combinator::weighted_sum;

  bool empty() const { return preferences.empty(); }
  std::size_t size() const { return preferences.size(); }
  bool states(std::string_view attr) const;

  bool operator==(const PreferenceModel&) const = default;
};

enum class Ordering { better, equal, worse };

// Throws Error(validation) or Error(type) when `pref` does not fit the catalog.
void validate(const Preference& pref, const Catalog& catalog);
void validate(const PreferenceModel& model, const Catalog& catalog);

// Cost of a coded attribute value, in [0, 1].
double cost(const Preference& pref, const AttributeSchema& attribute, double value);
double cost(const Preference& pref, const Catalog& catalog, const OptionRecord& option);

Ordering compare(const Preference& pref, const Catalog& catalog, const OptionRecord& first,
                 const OptionRecord& second);

double utility(const PreferenceModel& model, const Catalog& catalog, const OptionRecord& option);

bool pareto_dominates(const PreferenceModel& model, const Catalog& catalog,
                      const OptionRecord& first, const OptionRecord& second);

// Exchange format: [{attr, variant, theta?, direction?, polarity?, tolerance_t?, weight}].
nlohmann::json preference_to_json(const Preference& pref);
Preference preference_from_json(const nlohmann::json& item);
nlohmann::json model_to_json(const PreferenceModel& model);
PreferenceModel model_from_json(const nlohmann::json& document);

std::string_view to_string(Direction direction);
std::string_view to_string(Polarity polarity);

}  // namespace critique
