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
#include <optional>
#include <string>
#include <vector>

#include "critique/catalog.hpp"
#include "critique/dominance.hpp"
#include "critique/preference.hpp"
#include "critique/random_catalog.hpp"
#include "critique/suggest.hpp"

namespace critique {

/// The complete preference model of a simulated user. One preference is
/// stated up front, the rest stay hidden until the display triggers them.
struct HiddenUserModel {
  std::vector<Preference> preferences;
  std::size_t initial_index = 0;
};

struct HiddenModelOptions {
  NumericFamily family = NumericFamily::peaked;
  double tolerance_fraction = 0.1;  // of the attribute range
};

// Distinct attributes drawn without replacement. Qualitative attributes get
// a uniform label; numeric ones the configured family with uniform theta
// (and uniform polarity or direction). Weights are uniform in 1..5.
HiddenUserModel generate_hidden_model(const Catalog& catalog, std::size_t m, std::uint64_t seed,
                                      const HiddenModelOptions& options = {});

struct SimConfig {
  Strategy strategy = Strategy::prob_joint;
  std::optional<CatalogSpec> catalog_spec;  // fresh catalog per run when set
  std::size_t m = 9;
  std::size_t display_candidates = 1;
  std::size_t display_suggestions = 5;
  std::size_t runs = 100;
  std::uint64_t seed = 1;
  Criterion criterion = Criterion::pareto;
  HiddenModelOptions hidden;
  // Scoring parameters; strategy, criterion, set size and seed are
  // overwritten per cycle.
  SuggestionConfig suggestion;

  void validate() const;
};

struct RunRecord {
  std::size_t run = 0;
  Strategy strategy = Strategy::prob_joint;
  std::size_t discovered = 0;
  std::size_t hidden = 0;  // m - 1
  std::size_t cycles = 0;
  bool found = false;
  std::vector<std::string> stated;  // attributes in the order they were stated

  double fraction() const {
    return hidden == 0 ? 1.0 : static_cast<double>(discovered) / static_cast<double>(hidden);
  }
};

struct ExperimentResult {
  std::vector<RunRecord> runs;
  double mean_fraction = 0.0;
  // curve[x] = fraction of runs that discovered at least x preferences,
  // x = 0 .. m-1.
  std::vector<double> curve;
};

/// Index into hidden.preferences of the first unstated preference, in
/// `scan_order`, under which some displayed option that is dominated now
/// becomes Pareto-optimal in the catalog. nullopt means the user stops.
std::optional<std::size_t> user_react(const Catalog& catalog, const HiddenUserModel& hidden,
                                      const PreferenceModel& stated,
                                      const std::vector<std::size_t>& display,
                                      const std::vector<std::size_t>& scan_order);

RunRecord run_session(const Catalog& catalog, const HiddenUserModel& hidden, const SimConfig& config,
                      std::uint64_t seed);

// `fixture` is used for every run when config.catalog_spec is empty.
ExperimentResult run_experiment(const SimConfig& config, const Catalog* fixture = nullptr);

// Deterministic seed for a (master, stream, index) triple.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index);

}  // namespace critique
