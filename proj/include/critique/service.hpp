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
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "critique/catalog.hpp"
#include "critique/preference.hpp"
#include "critique/suggest.hpp"

namespace critique {

enum class DisplayMode { candidates_only, candidates_plus_suggestions };

std::string_view to_string(DisplayMode mode);  // "C" or "C+S"
// Also accepts "CS", "C S" (a decoded '+') and the enum spellings.
DisplayMode parse_display_mode(std::string_view text);

struct ServiceConfig {
  // Event logs and uploaded catalogs live here; empty keeps everything in memory.
  std::filesystem::path data_dir;
  std::size_t candidates_only = 6;
  std::size_t mixed_candidates = 3;
  std::size_t mixed_suggestions = 3;
  // Strategy and criterion of the suggestion half of a C+S display.
  SuggestionConfig suggestion = [] {
    SuggestionConfig c;
    c.strategy = Strategy::prob_joint;
    c.criterion = Criterion::utility;
    return c;
  }();
  // Tolerance of relational-operator preferences, as a fraction of the range.
  double relational_tolerance = 0.05;
};

struct InteractionEvent {
  std::size_t seq = 0;
  std::string ts;
  std::string session;
  std::size_t cycle = 0;
  std::string kind;  // session_created, prefs_added, prefs_changed, prefs_removed,
                     // display_shown, final_choice
  nlohmann::json payload;
};

nlohmann::json event_to_json(const InteractionEvent& event);
InteractionEvent event_from_json(const nlohmann::json& line);

std::vector<InteractionEvent> read_event_log(const std::filesystem::path& path);

struct Display {
  std::size_t cycle = 0;
  std::vector<std::string> candidates;  // option ids
  std::vector<std::string> suggestions;

  bool shows(std::string_view option_id) const;
  bool operator==(const Display&) const = default;
};

struct SessionSummary {
  std::string id;
  std::string catalog_id;
  DisplayMode mode = DisplayMode::candidates_plus_suggestions;
  bool closed = false;
  std::size_t cycles = 0;
  std::size_t initial_preferences = 0;  // model size at the first display
  std::size_t final_preferences = 0;    // model size at the final choice
  long increment = 0;
  std::optional<std::string> choice;
};

/// State reached by folding a session's history. Pure: depends on the
/// events alone.
struct SessionState {
  std::string id;
  std::string catalog_id;
  DisplayMode mode = DisplayMode::candidates_plus_suggestions;
  PreferenceModel model;
  std::optional<Display> last_display;
  SessionSummary summary;
};

SessionState fold_history(const std::vector<InteractionEvent>& events);

// Relational form {attr, operator: less|greater|equal, value, weight} or the
// preference exchange form, resolved against the catalog.
Preference preference_from_edit(const nlohmann::json& item, const Catalog& catalog,
                                double relational_tolerance);

// Display decision for a model; deterministic.
Display compute_display(const Catalog& catalog, const PreferenceModel& model, DisplayMode mode,
                        const ServiceConfig& config);

struct ReplayReport {
  std::size_t displays_checked = 0;
  std::vector<std::size_t> mismatched_cycles;
  SessionState state;
  bool ok() const { return mismatched_cycles.empty(); }
};

// Recomputes every recorded display from the model folded up to that point.
ReplayReport replay_session(const std::vector<InteractionEvent>& events, const Catalog& catalog,
                            const ServiceConfig& config);

// Table of means over closed sessions, one row per mode.
nlohmann::json compute_stats(const std::vector<SessionSummary>& sessions,
                             std::optional<DisplayMode> mode);

class CritiqueService {
 public:
  explicit CritiqueService(ServiceConfig config = {});
  ~CritiqueService();
  CritiqueService(const CritiqueService&) = delete;
  CritiqueService& operator=(const CritiqueService&) = delete;

  // Throws Error(conflict) when the id is taken.
  void add_catalog(const std::string& id, Catalog catalog);
  std::vector<std::string> catalog_ids() const;
  std::shared_ptr<const Catalog> catalog(const std::string& id) const;

  std::string create_session(const std::string& catalog_id, DisplayMode mode);
  // edits: [{op: add|change|remove, index?, attr?, pref?}]. All or nothing.
  nlohmann::json update_preferences(const std::string& session_id, const nlohmann::json& edits);
  nlohmann::json get_display(const std::string& session_id);
  nlohmann::json record_final_choice(const std::string& session_id, const std::string& option_id);
  nlohmann::json aggregate_stats(std::optional<DisplayMode> mode) const;

  nlohmann::json session_json(const std::string& session_id) const;
  std::vector<InteractionEvent> history(const std::string& session_id) const;
  const ServiceConfig& config() const { return config_; }

 private:
  struct Session;
  Session& find_session(const std::string& id) const;
  void append(Session& session, std::string kind, nlohmann::json payload);
  void load_data_dir();

  ServiceConfig config_;
  mutable std::shared_mutex mutex_;
  std::map<std::string, std::shared_ptr<const Catalog>> catalogs_;
  std::map<std::string, std::unique_ptr<Session>> sessions_;
  std::size_t next_session_ = 1;
};

}  // namespace critique
