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

#include "critique/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "critique/error.hpp"

namespace critique {

std::optional<std::size_t> AttributeSchema::label_index(std::string_view label) const {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] == label) return i;
  }
  return std::nullopt;
}

double AttributeSchema::prior_of(std::size_t index) const {
  if (index >= values.size()) return 0.0;
  if (value_prior.empty()) return 1.0 / static_cast<double>(values.size());
  return value_prior[index];
}

bool AttributeSchema::contains(double coded) const {
  if (!std::isfinite(coded)) return false;
  if (kind == AttributeKind::qualitative) {
    return coded >= 0.0 && coded == std::floor(coded) &&
           coded < static_cast<double>(values.size());
  }
  if (coded < lo || coded > hi) return false;
  return !discrete || coded == std::floor(coded);
}

void AttributeSchema::validate() const {
  if (name.empty()) throw Error(ErrorCode::validation, "attribute name is empty");
  if (!(prior_weight >= 0.0 && prior_weight <= 1.0)) {
    throw Error(ErrorCode::validation, "prior_weight of '" + name + "' is outside [0,1]", name);
  }
  if (kind == AttributeKind::qualitative) {
    if (values.empty()) {
      throw Error(ErrorCode::validation, "qualitative attribute '" + name + "' has no values", name);
    }
    std::unordered_set<std::string> seen;
    for (const auto& v : values) {
      if (!seen.insert(v).second) {
        throw Error(ErrorCode::validation,
                    "duplicate value '" + v + "' in attribute '" + name + "'", name);
      }
    }
    if (!value_prior.empty()) {
      if (value_prior.size() != values.size()) {
        throw Error(ErrorCode::validation,
                    "value_prior of '" + name + "' does not match its value list", name);
      }
      double total = 0.0;
      for (double p : value_prior) {
        if (!(p >= 0.0)) {
          throw Error(ErrorCode::validation, "negative value_prior entry in '" + name + "'", name);
        }
        total += p;
      }
      if (std::abs(total - 1.0) > 1e-9) {
        throw Error(ErrorCode::validation, "value_prior of '" + name + "' does not sum to 1", name);
      }
    }
  } else {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
      throw Error(ErrorCode::validation, "numeric attribute '" + name + "' needs lo < hi", name);
    }
    if (!values.empty() || !value_prior.empty()) {
      throw Error(ErrorCode::validation, "numeric attribute '" + name + "' carries labels", name);
    }
  }
}

Catalog::Catalog(std::vector<AttributeSchema> schema, std::vector<OptionRecord> options)
    : schema_(std::move(schema)), options_(std::move(options)) {
  if (schema_.empty()) throw Error(ErrorCode::validation, "catalog schema has no attributes");
  for (std::size_t i = 0; i < schema_.size(); ++i) {
    schema_[i].validate();
    if (!attribute_lookup_.emplace(schema_[i].name, i).second) {
      throw Error(ErrorCode::validation, "duplicate attribute '" + schema_[i].name + "'",
                  schema_[i].name);
    }
  }
  columns_.assign(schema_.size(), std::vector<double>(options_.size()));
  for (std::size_t o = 0; o < options_.size(); ++o) {
    const auto& record = options_[o];
    if (record.id.empty()) throw Error(ErrorCode::validation, "option without id");
    if (!option_lookup_.emplace(record.id, o).second) {
      throw Error(ErrorCode::validation, "duplicate option id '" + record.id + "'", record.id);
    }
    if (record.values.size() != schema_.size()) {
      throw Error(ErrorCode::validation,
                  "option '" + record.id + "' has " + std::to_string(record.values.size()) +
                      " values, schema has " + std::to_string(schema_.size()),
                  record.id);
    }
    for (std::size_t a = 0; a < schema_.size(); ++a) {
      if (!schema_[a].contains(record.values[a])) {
        throw Error(ErrorCode::validation,
                    "option '" + record.id + "': value of '" + schema_[a].name +
                        "' is outside its domain",
                    schema_[a].name);
      }
      columns_[a][o] = record.values[a];
    }
  }
}

std::optional<std::size_t> Catalog::find_attribute(std::string_view name) const {
  auto it = attribute_lookup_.find(std::string(name));
  if (it == attribute_lookup_.end()) return std::nullopt;
  return it->second;
}

std::size_t Catalog::attribute_index(std::string_view name) const {
  if (auto index = find_attribute(name)) return *index;
  throw Error(ErrorCode::validation, "unknown attribute '" + std::string(name) + "'",
              std::string(name));
}

std::optional<std::size_t> Catalog::find_option(std::string_view id) const {
  auto it = option_lookup_.find(std::string(id));
  if (it == option_lookup_.end()) return std::nullopt;
  return it->second;
}

std::string Catalog::format_value(std::size_t attribute, double coded) const {
  const auto& schema = schema_.at(attribute);
  if (schema.kind == AttributeKind::qualitative) {
    return schema.values.at(static_cast<std::size_t>(coded));
  }
  std::ostringstream out;
  out.precision(17);
  out << coded;
  return out.str();
}

double attribute_range(const Catalog& catalog, std::string_view attr) {
  const auto& schema = catalog.attribute(catalog.attribute_index(attr));
  if (!schema.is_numeric()) {
    throw Error(ErrorCode::type, "attribute '" + schema.name + "' is qualitative", schema.name);
  }
  return schema.range();
}

}  // namespace critique
