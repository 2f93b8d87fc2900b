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
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

namespace critique {

enum class AttributeKind { qualitative, numeric };

/// Declared domain of one attribute. Qualitative attributes carry an ordered
/// list of labels; numeric ones a closed interval [lo, hi].
struct AttributeSchema {
  std::string name;
  AttributeKind kind = AttributeKind::numeric;
  std::vector<std::string> values;  // qualitative labels
  double lo = 0.0;
  double hi = 1.0;
  bool discrete = false;
  // Probability that a user holds an unstated preference on this attribute.
  double prior_weight = 0.5;
  // Distribution over `values`; empty means uniform.
  std::vector<double> value_prior;

  bool is_numeric() const { return kind == AttributeKind::numeric; }
  double range() const { return hi - lo; }
  std::optional<std::size_t> label_index(std::string_view label) const;
  // Probability of label `index` being the preferred value.
  double prior_of(std::size_t index) const;
  bool contains(double coded_value) const;

  // Throws Error(validation) when the schema is inconsistent.
  void validate() const;

  bool operator==(const AttributeSchema&) const = default;
};

/// One catalog entry. Values are coded per attribute: the number itself for
/// numeric attributes, the label index for qualitative ones.
struct OptionRecord {
  std::string id;
  std::vector<double> values;

  bool operator==(const OptionRecord&) const = default;
};

/// Immutable, validated option set.
class Catalog {
 public:
  Catalog() = default;
  Catalog(std::vector<AttributeSchema> schema, std::vector<OptionRecord> options);

  const std::vector<AttributeSchema>& schema() const { return schema_; }
  const std::vector<OptionRecord>& options() const { return options_; }
  std::size_t size() const { return options_.size(); }
  std::size_t attribute_count() const { return schema_.size(); }

  const AttributeSchema& attribute(std::size_t index) const { return schema_.at(index); }
  std::optional<std::size_t> find_attribute(std::string_view name) const;
  // Throws Error(validation) for unknown names.
  std::size_t attribute_index(std::string_view name) const;

  std::optional<std::size_t> find_option(std::string_view id) const;
  const OptionRecord& option(std::size_t index) const { return options_.at(index); }

  // Values of one attribute across all options, in catalog order.
  std::span<const double> column(std::size_t attribute) const { return columns_.at(attribute); }

  // Display form of a coded value (label for qualitative attributes).
  std::string format_value(std::size_t attribute, double coded) const;

  bool operator==(const Catalog& other) const {
    return schema_ == other.schema_ && options_ == other.options_;
  }

 private:
  std::vector<AttributeSchema> schema_;
  std::vector<OptionRecord> options_;
  std::vector<std::vector<double>> columns_;
  std::unordered_map<std::string, std::size_t> attribute_lookup_;
  std::unordered_map<std::string, std::size_t> option_lookup_;
};

enum class CatalogFormat { csv, json };

Catalog load_catalog(std::istream& source, CatalogFormat format);
// Format chosen from the extension (.csv, otherwise JSON).
Catalog load_catalog_file(const std::filesystem::path& path);
void write_catalog(std::ostream& out, const Catalog& catalog, CatalogFormat format);

nlohmann::json catalog_to_json(const Catalog& catalog);
Catalog catalog_from_json(const nlohmann::json& document);
nlohmann::json schema_to_json(const AttributeSchema& attribute);
AttributeSchema schema_from_json(const nlohmann::json& item);

/// hi - lo of the declared domain. Throws Error(type) for qualitative
/// attributes.
double attribute_range(const Catalog& catalog, std::string_view attr);

}  // namespace critique
