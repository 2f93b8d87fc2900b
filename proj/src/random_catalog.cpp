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

#include "critique/random_catalog.hpp"

#include <charconv>
#include <cmath>
#include <random>

#include "critique/error.hpp"

namespace critique {

namespace {

std::size_t parse_count(std::string_view digits, std::string_view context) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc() || ptr != digits.data() + digits.size()) {
    throw Error(ErrorCode::config, "bad count in '" + std::string(context) + "'");
  }
  return value;
}

}  // namespace

std::vector<AttributeSchema> parse_attribute_mix(std::string_view mix) {
  std::vector<AttributeSchema> attributes;
  std::size_t start = 0;
  while (start <= mix.size()) {
    auto end = mix.find_first_of("+,", start);
    auto term = mix.substr(start, end == std::string_view::npos ? end : end - start);
    std::size_t digits = 0;
    while (digits < term.size() && term[digits] >= '0' && term[digits] <= '9') ++digits;
    if (digits == 0 || digits == term.size()) {
      throw Error(ErrorCode::config, "attribute term '" + std::string(term) + "' must look like 9int");
    }
    auto count = parse_count(term.substr(0, digits), term);
    auto kind = term.substr(digits);
    for (std::size_t i = 0; i < count; ++i) {
      AttributeSchema a;
      a.name = "a" + std::to_string(attributes.size());
      if (kind == "int") {
        a.lo = 0;
        a.hi = 100;
        a.discrete = true;
      } else if (kind == "real") {
        a.lo = 0;
        a.hi = 100;
      } else if (kind == "qual") {
        a.kind = AttributeKind::qualitative;
        a.values = {"q0", "q1", "q2", "q3"};
      } else if (kind == "ord") {
        a.lo = 0;
        a.hi = 4;
        a.discrete = true;
      } else {
        throw Error(ErrorCode::config, "unknown attribute kind '" + std::string(kind) + "'");
      }
      attributes.push_back(std::move(a));
    }
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  if (attributes.empty()) throw Error(ErrorCode::config, "attribute mix is empty");
  return attributes;
}

CatalogSpec parse_catalog_spec(std::string_view text) {
  constexpr std::string_view prefix = "rand-";
  if (text.substr(0, prefix.size()) != prefix) {
    throw Error(ErrorCode::config, "catalog spec '" + std::string(text) + "' must start with rand-");
  }
  auto body = text.substr(prefix.size());
  auto x = body.find('x');
  if (x == std::string_view::npos) {
    throw Error(ErrorCode::config, "catalog spec '" + std::string(text) + "' must be rand-<n>x<mix>");
  }
  CatalogSpec spec;
  spec.n = parse_count(body.substr(0, x), text);
  spec.attributes = parse_attribute_mix(body.substr(x + 1));
  return spec;
}

Catalog generate_random_catalog(const CatalogSpec& spec, std::uint64_t seed) {
  if (spec.n < 1) throw Error(ErrorCode::config, "random catalog needs n >= 1");
  if (spec.attributes.empty()) throw Error(ErrorCode::config, "random catalog needs attributes");
  for (const auto& a : spec.attributes) {
    bool degenerate = a.kind == AttributeKind::qualitative ? a.values.size() < 2 : !(a.lo < a.hi);
    if (degenerate) {
      throw Error(ErrorCode::config, "attribute '" + a.name + "' has a degenerate domain", a.name);
    }
    if (a.is_numeric() && a.discrete && std::ceil(a.lo) > std::floor(a.hi)) {
      throw Error(ErrorCode::config, "attribute '" + a.name + "' has no integer in its domain", a.name);
    }
  }

  std::mt19937_64 rng(seed);
  auto width = std::to_string(spec.n).size();
  std::vector<OptionRecord> options;
  options.reserve(spec.n);
  for (std::size_t i = 0; i < spec.n; ++i) {
    OptionRecord record;
    auto number = std::to_string(i + 1);
    record.id = "o" + std::string(width - number.size(), '0') + number;
    for (const auto& a : spec.attributes) {
      double value = 0.0;
      if (a.kind == AttributeKind::qualitative) {
        std::uniform_int_distribution<std::size_t> pick(0, a.values.size() - 1);
        value = static_cast<double>(pick(rng));
      } else if (a.discrete) {
        std::uniform_int_distribution<std::int64_t> pick(static_cast<std::int64_t>(std::ceil(a.lo)),
                                                         static_cast<std::int64_t>(std::floor(a.hi)));
        value = static_cast<double>(pick(rng));
      } else {
        std::uniform_real_distribution<double> pick(a.lo, a.hi);
        value = pick(rng);
      }
      record.values.push_back(value);
    }
    options.push_back(std::move(record));
  }
  return Catalog(spec.attributes, std::move(options));
}

}  // namespace critique
