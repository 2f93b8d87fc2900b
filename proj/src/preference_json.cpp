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

#include "critique/error.hpp"
#include "critique/preference.hpp"

namespace critique {

using nlohmann::json;

namespace {

Direction parse_direction(const std::string& text) {
  if (text == "smaller_better") return Direction::smaller_better;
  if (text == "larger_better") return Direction::larger_better;
  throw Error(ErrorCode::validation, "unknown direction '" + text + "'", "direction");
}

Polarity parse_polarity(const std::string& text) {
  if (text == "less_than") return Polarity::less_than;
  if (text == "greater_than") return Polarity::greater_than;
  throw Error(ErrorCode::validation, "unknown polarity '" + text + "'", "polarity");
}

}  // namespace

json preference_to_json(const Preference& pref) {
  json item = {{"attr", pref.attr}};
  if (auto q = std::get_if<QualitativeValue>(&pref.variant)) {
    item["variant"] = "qualitative";
    item["theta"] = q->theta;
  } else if (auto d = std::get_if<Directional>(&pref.variant)) {
    item["variant"] = "directional";
    item["direction"] = to_string(d->direction);
  } else if (auto t = std::get_if<Threshold>(&pref.variant)) {
    item["variant"] = "threshold";
    item["polarity"] = to_string(t->polarity);
    item["theta"] = t->theta;
    item["tolerance_t"] = t->tolerance;
  } else if (auto p = std::get_if<Peaked>(&pref.variant)) {
    item["variant"] = "peaked";
    item["theta"] = p->theta;
    item["tolerance_t"] = p->tolerance;
  }
  item["weight"] = pref.weight;
  return item;
}

Preference preference_from_json(const json& item) {
  if (!item.is_object()) throw Error(ErrorCode::parse, "preference is not an object");
  try {
    Preference pref;
    pref.attr = item.at("attr").get<std::string>();
    pref.weight = item.value("weight", 1);
    auto variant = item.at("variant").get<std::string>();
    if (variant == "qualitative" || variant == "qualitative_value") {
      pref.variant = QualitativeValue{item.at("theta").get<std::string>()};
    } else if (variant == "directional") {
      pref.variant = Directional{parse_direction(item.at("direction").get<std::string>())};
    } else if (variant == "threshold") {
      pref.variant = Threshold{parse_polarity(item.at("polarity").get<std::string>()),
                               item.at("theta").get<double>(), item.value("tolerance_t", 0.0)};
    } else if (variant == "peaked") {
      pref.variant = Peaked{item.at("theta").get<double>(), item.at("tolerance_t").get<double>()};
    } else {
      throw Error(ErrorCode::validation, "unknown preference variant '" + variant + "'", "variant");
    }
    return pref;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse, std::string("preference JSON: ") + e.what());
  }
}

json model_to_json(const PreferenceModel& model) {
  json list = json::array();
  for (const auto& pref : model.preferences) list.push_back(preference_to_json(pref));
  return list;
}

PreferenceModel model_from_json(const json& document) {
  PreferenceModel model;
  const json* list = &document;
  if (document.is_object()) {
    list = &document.at("preferences");
    auto combinator = document.value("combinator", std::string("weighted_sum"));
    if (combinator == "min_combinator") {
      model.combinator = Combinator::min_combinator;
    } else if (combinator != "weighted_sum") {
      throw Error(ErrorCode::validation, "unknown combinator '" + combinator + "'", "combinator");
    }
  }
  if (!list->is_array()) throw Error(ErrorCode::parse, "preference model must be a JSON array");
  for (const auto& item : *list) model.preferences.push_back(preference_from_json(item));
  return model;
}

}  // namespace critique
