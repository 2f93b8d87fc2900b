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

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "critique/catalog.hpp"
#include "critique/error.hpp"

namespace critique {

using nlohmann::json;

namespace {

std::string shortest(double value) {
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, end);
}

json number_to_json(double value) {
  if (value == std::floor(value) && std::abs(value) < 9.0e15) {
    return static_cast<std::int64_t>(value);
  }
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::optional<double> parse_number(std::string_view text) {
  text = trim(text);
  if (text.empty()) return std::nullopt;
  if (text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

[[noreturn]] void csv_error(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::parse, "line " + std::to_string(line) + ": " + what);
}

AttributeSchema parse_csv_column(std::string_view header, std::size_t line) {
  auto parts = split(header, ':');
  if (parts.size() < 2) csv_error(line, "column '" + std::string(header) + "' lacks a kind");
  AttributeSchema schema;
  schema.name = std::string(trim(parts[0]));
  auto kind = trim(parts[1]);
  if (kind == "qualitative") {
    schema.kind = AttributeKind::qualitative;
    if (parts.size() != 3) csv_error(line, "qualitative column '" + schema.name + "' needs v1|v2|...");
    for (auto label : split(parts[2], '|')) schema.values.emplace_back(trim(label));
  } else if (kind == "numeric" || kind == "integer") {
    schema.kind = AttributeKind::numeric;
    schema.discrete = kind == "integer";
    if (parts.size() != 4) csv_error(line, "numeric column '" + schema.name + "' needs :lo:hi");
    auto lo = parse_number(parts[2]);
    auto hi = parse_number(parts[3]);
    if (!lo || !hi) csv_error(line, "bad bounds for column '" + schema.name + "'");
    schema.lo = *lo;
    schema.hi = *hi;
  } else {
    csv_error(line, "unknown kind '" + std::string(kind) + "'");
  }
  return schema;
}

Catalog load_csv(std::istream& source) {
  std::string text;
  std::size_t line_number = 0;
  std::vector<AttributeSchema> schema;
  std::vector<OptionRecord> options;
  bool have_header = false;
  while (std::getline(source, text)) {
    ++line_number;
    auto line = trim(text);
    if (line.empty() || line.front() == '#') continue;
    auto cells = split(line, ',');
    if (!have_header) {
      if (trim(cells.front()) != "id") csv_error(line_number, "first column must be 'id'");
      if (cells.size() < 2) csv_error(line_number, "no attribute columns");
      for (std::size_t c = 1; c < cells.size(); ++c) {
        schema.push_back(parse_csv_column(trim(cells[c]), line_number));
      }
      have_header = true;
      continue;
    }
    if (cells.size() != schema.size() + 1) {
      csv_error(line_number, "expected " + std::to_string(schema.size() + 1) + " cells, got " +
                                 std::to_string(cells.size()));
    }
    OptionRecord record;
    record.id = std::string(trim(cells[0]));
    for (std::size_t a = 0; a < schema.size(); ++a) {
      auto cell = trim(cells[a + 1]);
      if (schema[a].kind == AttributeKind::qualitative) {
        auto index = schema[a].label_index(cell);
        if (!index) {
          throw Error(ErrorCode::validation,
                      "line " + std::to_string(line_number) + ": option '" + record.id +
                          "': '" + std::string(cell) + "' is not a value of '" + schema[a].name + "'",
                      schema[a].name);
        }
        record.values.push_back(static_cast<double>(*index));
      } else {
        auto value = parse_number(cell);
        if (!value) {
          csv_error(line_number, "'" + std::string(cell) + "' is not a number (attribute '" +
                                     schema[a].name + "')");
        }
        record.values.push_back(*value);
      }
    }
    options.push_back(std::move(record));
  }
  if (!have_header) csv_error(line_number, "missing header line");
  return Catalog(std::move(schema), std::move(options));
}

void write_csv(std::ostream& out, const Catalog& catalog) {
  out << "id";
  for (const auto& a : catalog.schema()) {
    out << ',' << a.name << ':';
    if (a.kind == AttributeKind::qualitative) {
      out << "qualitative:";
      for (std::size_t i = 0; i < a.values.size(); ++i) out << (i ? "|" : "") << a.values[i];
    } else {
      out << (a.discrete ? "integer" : "numeric") << ':' << shortest(a.lo) << ':' << shortest(a.hi);
    }
  }
  out << '\n';
  for (const auto& o : catalog.options()) {
    out << o.id;
    for (std::size_t a = 0; a < o.values.size(); ++a) {
      out << ',';
      if (catalog.attribute(a).is_numeric()) {
        out << shortest(o.values[a]);
      } else {
        out << catalog.format_value(a, o.values[a]);
      }
    }
    out << '\n';
  }
}

}  // namespace

json schema_to_json(const AttributeSchema& a) {
  json item = {{"name", a.name}};
  if (a.kind == AttributeKind::qualitative) {
    item["kind"] = "qualitative";
    item["values"] = a.values;
    if (!a.value_prior.empty()) {
      json prior = json::object();
      for (std::size_t i = 0; i < a.values.size(); ++i) prior[a.values[i]] = a.value_prior[i];
      item["value_prior"] = prior;
    }
  } else {
    item["kind"] = "numeric";
    item["lo"] = number_to_json(a.lo);
    item["hi"] = number_to_json(a.hi);
    item["discrete"] = a.discrete;
  }
  item["prior_weight"] = a.prior_weight;
  return item;
}

AttributeSchema schema_from_json(const json& item) {
  if (!item.is_object()) throw Error(ErrorCode::parse, "schema entry is not an object");
  AttributeSchema a;
  a.name = item.at("name").get<std::string>();
  auto kind = item.at("kind").get<std::string>();
  if (kind == "qualitative") {
    a.kind = AttributeKind::qualitative;
    a.values = item.at("values").get<std::vector<std::string>>();
    if (auto it = item.find("value_prior"); it != item.end()) {
      if (it->is_array()) {
        a.value_prior = it->get<std::vector<double>>();
      } else {
        a.value_prior.assign(a.values.size(), 0.0);
        for (auto& [label, p] : it->items()) {
          auto index = a.label_index(label);
          if (!index) {
            throw Error(ErrorCode::validation,
                        "value_prior names unknown value '" + label + "' of '" + a.name + "'", a.name);
          }
          a.value_prior[*index] = p.get<double>();
        }
      }
    }
  } else if (kind == "numeric" || kind == "integer") {
    a.kind = AttributeKind::numeric;
    a.lo = item.at("lo").get<double>();
    a.hi = item.at("hi").get<double>();
    a.discrete = item.value("discrete", kind == "integer");
  } else {
    throw Error(ErrorCode::parse, "unknown attribute kind '" + kind + "'", a.name);
  }
  a.prior_weight = item.value("prior_weight", 0.5);
  return a;
}

json catalog_to_json(const Catalog& catalog) {
  json schema = json::array();
  for (const auto& a : catalog.schema()) schema.push_back(schema_to_json(a));
  json options = json::array();
  for (const auto& o : catalog.options()) {
    json values = json::object();
    for (std::size_t a = 0; a < o.values.size(); ++a) {
      const auto& attr = catalog.attribute(a);
      if (attr.is_numeric()) {
        values[attr.name] = number_to_json(o.values[a]);
      } else {
        values[attr.name] = catalog.format_value(a, o.values[a]);
      }
    }
    options.push_back({{"id", o.id}, {"values", values}});
  }
  return {{"schema", schema}, {"options", options}};
}

Catalog catalog_from_json(const json& document) {
  std::vector<AttributeSchema> schema;
  std::vector<OptionRecord> options;
  try {
    for (const auto& item : document.at("schema")) schema.push_back(schema_from_json(item));
    const auto& list = document.contains("options") ? document.at("options") : json::array();
    std::size_t record_number = 0;
    for (const auto& item : list) {
      ++record_number;
      OptionRecord record;
      record.id = item.at("id").get<std::string>();
      const auto& values = item.at("values");
      if (!values.is_object()) {
        throw Error(ErrorCode::parse, "record " + std::to_string(record_number) + ": values is not an object");
      }
      for (auto& [name, _] : values.items()) {
        bool known = std::any_of(schema.begin(), schema.end(),
                                 [&](const AttributeSchema& a) { return a.name == name; });
        if (!known) {
          throw Error(ErrorCode::validation,
                      "option '" + record.id + "': unknown attribute '" + name + "'", name);
        }
      }
      for (const auto& a : schema) {
        auto it = values.find(a.name);
        if (it == values.end()) {
          throw Error(ErrorCode::validation,
                      "option '" + record.id + "': missing value for '" + a.name + "'", a.name);
        }
        if (a.kind == AttributeKind::qualitative) {
          if (!it->is_string()) {
            throw Error(ErrorCode::validation,
                        "option '" + record.id + "': '" + a.name + "' must be a label", a.name);
          }
          auto index = a.label_index(it->get<std::string>());
          if (!index) {
            throw Error(ErrorCode::validation,
                        "option '" + record.id + "': '" + it->get<std::string>() +
                            "' is not a value of '" + a.name + "'",
                        a.name);
          }
          record.values.push_back(static_cast<double>(*index));
        } else {
          if (!it->is_number()) {
            throw Error(ErrorCode::validation,
                        "option '" + record.id + "': '" + a.name + "' must be a number", a.name);
          }
          record.values.push_back(it->get<double>());
        }
      }
      options.push_back(std::move(record));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse, std::string("catalog JSON: ") + e.what());
  }
  return Catalog(std::move(schema), std::move(options));
}

Catalog load_catalog(std::istream& source, CatalogFormat format) {
  if (format == CatalogFormat::csv) return load_csv(source);
  json document;
  try {
    document = json::parse(source);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::parse, std::string("catalog JSON: ") + e.what());
  }
  return catalog_from_json(document);
}

Catalog load_catalog_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::not_found, "cannot open catalog '" + path.string() + "'");
  auto format = path.extension() == ".csv" ? CatalogFormat::csv : CatalogFormat::json;
  return load_catalog(in, format);
}

void write_catalog(std::ostream& out, const Catalog& catalog, CatalogFormat format) {
  if (format == CatalogFormat::csv) {
    write_csv(out, catalog);
  } else {
    out << catalog_to_json(catalog).dump(2) << '\n';
  }
}

}  // namespace critique
