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
#include <string>
#include <string_view>
#include <vector>

#include "critique/catalog.hpp"

namespace critique {

/// Domains to draw from. Qualitative attributes draw a label uniformly,
/// discrete numeric attributes an integer in [lo, hi], continuous ones a real.
struct CatalogSpec {
  std::size_t n = 0;
  std::vector<AttributeSchema> attributes;
};

// Builds attributes from a mix such as "9int" or "5int+2qual+2ord".
//   int  -> integer [0, 100]
//   real -> continuous [0, 100]
//   qual -> 4 unordered labels
//   ord  -> integer [0, 4] (five ordered levels)
std::vector<AttributeSchema> parse_attribute_mix(std::string_view mix);

// "rand-<n>x<mix>", e.g. "rand-50x9int".
CatalogSpec parse_catalog_spec(std::string_view text);

Catalog generate_random_catalog(const CatalogSpec& spec, std::uint64_t seed);

}  // namespace critique
