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

#include "critique/service.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <mutex>
#include <regex>

#include "critique/dominance.hpp"
#include "critique/error.hpp"

namespace critique {

using nlohmann::json;

std::string_view to_string(DisplayMode mode) {
  return mode == DisplayMode::candidates_only ? "C" : "C+S";
}

DisplayMode parse_display_mode(std::string_view text) {
  if (text == "C" || text == "candidates_only") return DisplayMode::candidates_only;
  if (text == "C+S" || text == "CS" || text == "C S" || text == "candidates_plus_suggestions") {
    return DisplayMode::candidates_plus_suggestions;
  }
  throw Error(ErrorCode::validation, "unknown mode '" + std::string(text) + "' (use C or C+S)", "mode");
}

bool Display::shows(std::string_view option_id) const {
  auto has = [&](const std::vector<std::string>& ids) {
    return std::find(ids.begin(), ids.end(), option_id) != ids.end();
  };
  return has(candidates) || has(suggestions);
}

json event_to_json(const InteractionEvent& event) {
  return json{{"seq", event.seq},         {"ts", event.ts},     {"session", event.session},
              {"cycle", event.cycle},     {"kind", event.kind}, {"payload", event.payload}};
}

InteractionEvent event_from_json(const json& line) {
  try {
    InteractionEvent e;
    e.seq = line.value("seq", std::size_t{0});
    e.ts = line.value("ts", std::string{});
    e.session = line.at("session").get<std::string>();
    e.cycle = line.at("cycle").get<std::size_t>();
    e.kind = line.at("kind").get<std::string>();
    e.payload = line.value("payload", json::object());
    return e;
  } catch (const json::exception& ex) {
    throw Error(ErrorCode::parse, std::string("malformed event: ") + ex.what());
  }
}

std::vector<InteractionEvent> read_event_log(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::not_found, "cannot open event log " + path.string());
  std::vector<InteractionEvent> events;
  std::string text;
  std::size_t line_no = 0;
  while (std::getline(in, text)) {
    ++line_no;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    json line;
    try {
      line = json::parse(text);
    } catch (const json::parse_error& ex) {
      throw Error(ErrorCode::parse, path.filename().string() + " line " + std::to_string(line_no) + ": " + ex.what());
    }
    events.push_back(event_from_json(line));
  }
  return events;
}

namespace {

// Applies one event to a folded state.
void apply_event(SessionState& state, const InteractionEvent& event) {
  const auto& p = event.payload;
  auto& prefs = state.model.preferences;
  auto index_of = [&](bool inserting) {
    const auto i = p.at("index").get<std::size_t>();
    if (i > prefs.size() || (!inserting && i == prefs.size())) {
      throw Error(ErrorCode::validation, "event index out of range", "index");
    }
    return i;
  };
  try {
    if (event.kind == "session_created") {
      state.id = event.session;
      state.catalog_id = p.at("catalog_id").get<std::string>();
      state.mode = parse_display_mode(p.at("mode").get<std::string>());
      state.summary.id = state.id;
      state.summary.catalog_id = state.catalog_id;
      state.summary.mode = state.mode;
    } else if (event.kind == "prefs_added") {
      const auto i = index_of(true);
      prefs.insert(prefs.begin() + static_cast<std::ptrdiff_t>(i), preference_from_json(p.at("pref")));
    } else if (event.kind == "prefs_changed") {
      prefs[index_of(false)] = preference_from_json(p.at("pref"));
    } else if (event.kind == "prefs_removed") {
      prefs.erase(prefs.begin() + static_cast<std::ptrdiff_t>(index_of(false)));
    } else if (event.kind == "display_shown") {
      Display d;
      d.cycle = event.cycle;
      d.candidates = p.at("candidates").get<std::vector<std::string>>();
      d.suggestions = p.at("suggestions").get<std::vector<std::string>>();
      if (state.summary.cycles == 0) state.summary.initial_preferences = prefs.size();
      state.summary.cycles = event.cycle;
      state.last_display = std::move(d);
    } else if (event.kind == "final_choice") {
      state.summary.closed = true;
      state.summary.choice = p.at("option_id").get<std::string>();
      state.summary.final_preferences = prefs.size();
      state.summary.increment = static_cast<long>(state.summary.final_preferences) -
                                static_cast<long>(state.summary.initial_preferences);
    } else {
      throw Error(ErrorCode::parse, "unknown event kind '" + event.kind + "'", "kind");
    }
  } catch (const json::exception& ex) {
    throw Error(ErrorCode::parse, "malformed " + event.kind + " event: " + ex.what());
  }
}

json option_json(const Catalog& catalog, const std::string& id) {
  const auto& option = catalog.option(*catalog.find_option(id));
  json values = json::object();
  for (std::size_t a = 0; a < catalog.attribute_count(); ++a) {
    const auto& attribute = catalog.attribute(a);
    if (attribute.is_numeric()) {
      values[attribute.name] = option.values[a];
    } else {
      values[attribute.name] = attribute.values.at(static_cast<std::size_t>(option.values[a]));
    }
  }
  return json{{"id", option.id}, {"values", values}};
}

json summary_json(const SessionSummary& s) {
  json out{{"session_id", s.id},
           {"catalog_id", s.catalog_id},
           {"mode", to_string(s.mode)},
           {"closed", s.closed},
           {"cycles", s.cycles},
           {"initial_preferences", s.initial_preferences},
           {"final_preferences", s.final_preferences},
           {"increment", s.increment}};
  if (s.choice) out["choice"] = *s.choice;
  return out;
}

std::string now_iso8601() {
  const auto now = std::chrono::system_clock::now();
  const auto t = std::chrono::system_clock::to_time_t(now);
  const auto ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
  char out[40];
  std::snprintf(out, sizeof out, "%s.%03dZ", buf, static_cast<int>(ms));
  return out;
}

void check_identifier(const std::string& id, const char* field) {
  static const std::regex pattern("[A-Za-z0-9_.-]{1,64}");
  if (!std::regex_match(id, pattern) || id == "." || id == "..") {
    throw Error(ErrorCode::validation, std::string("invalid ") + field + " '" + id + "'", field);
  }
}

}  // namespace

SessionState fold_history(const std::vector<InteractionEvent>& events) {
  SessionState state;
  for (const auto& e : events) apply_event(state, e);
  return state;
}

Preference preference_from_edit(const json& item, const Catalog& catalog, double relational_tolerance) {
  if (!item.is_object()) throw Error(ErrorCode::validation, "preference must be an object", "pref");
  Preference pref;
  if (!item.contains("operator")) {
    pref = preference_from_json(item);
  } else {
    try {
      pref.attr = item.at("attr").get<std::string>();
      pref.weight = item.value("weight", 1);
      const auto op = item.at("operator").get<std::string>();
      const auto& attribute = catalog.attribute(catalog.attribute_index(pref.attr));
      const auto& value = item.at("value");
      if (!attribute.is_numeric()) {
        if (op != "equal") {
          throw Error(ErrorCode::type, "operator '" + op + "' needs a numeric attribute", pref.attr);
        }
        pref.variant = QualitativeValue{value.get<std::string>()};
      } else {
        if (!value.is_number()) throw Error(ErrorCode::validation, "value must be a number", pref.attr);
        const double theta = value.get<double>();
        const double tolerance = relational_tolerance * attribute.range();
        if (op == "less") {
          pref.variant = Threshold{Polarity::less_than, theta, tolerance};
        } else if (op == "greater") {
          pref.variant = Threshold{Polarity::greater_than, theta, tolerance};
        } else if (op == "equal") {
          pref.variant = Peaked{theta, tolerance};
        } else {
          throw Error(ErrorCode::validation, "unknown operator '" + op + "'", "operator");
        }
      }
    } catch (const json::exception& ex) {
      throw Error(ErrorCode::validation, std::string("malformed preference: ") + ex.what(), "pref");
    }
  }
  validate(pref, catalog);
  return pref;
}

Display compute_display(const Catalog& catalog, const PreferenceModel& model, DisplayMode mode,
                        const ServiceConfig& config) {
  if (model.empty()) {
    throw Error(ErrorCode::empty_model, "state at least one preference to see options");
  }
  Display display;
  const bool mixed = mode == DisplayMode::candidates_plus_suggestions;
  const auto candidates =
      top_k_candidates(model, catalog, mixed ? config.mixed_candidates : config.candidates_only);
  for (auto c : candidates) display.candidates.push_back(catalog.option(c).id);
  if (mixed && config.mixed_suggestions > 0) {
    SuggestionConfig scoring = config.suggestion;
    scoring.set_size = config.mixed_suggestions;
    const auto index = build_dominance_index(model, catalog, scoring.criterion);
    try {
      for (auto s : select_suggestions(catalog, model, index, scoring, candidates)) {
        display.suggestions.push_back(catalog.option(s).id);
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::no_suggestion) throw;
    }
  }
  return display;
}

ReplayReport replay_session(const std::vector<InteractionEvent>& events, const Catalog& catalog,
                            const ServiceConfig& config) {
  ReplayReport report;
  for (const auto& e : events) {
    if (e.kind == "display_shown") {
      auto expected = compute_display(catalog, report.state.model, report.state.mode, config);
      expected.cycle = e.cycle;
      apply_event(report.state, e);
      ++report.displays_checked;
      if (!(expected == *report.state.last_display)) report.mismatched_cycles.push_back(e.cycle);
    } else {
      apply_event(report.state, e);
    }
  }
  return report;
}

json compute_stats(const std::vector<SessionSummary>& sessions, std::optional<DisplayMode> mode) {
  json rows = json::array();
  for (auto m : {DisplayMode::candidates_only, DisplayMode::candidates_plus_suggestions}) {
    if (mode && *mode != m) continue;
    std::size_t count = 0;
    double cycles = 0, initial = 0, final_count = 0, increment = 0;
    for (const auto& s : sessions) {
      if (!s.closed || s.mode != m) continue;
      ++count;
      cycles += static_cast<double>(s.cycles);
      initial += static_cast<double>(s.initial_preferences);
      final_count += static_cast<double>(s.final_preferences);
      increment += static_cast<double>(s.increment);
    }
    if (count == 0) continue;
    const double n = static_cast<double>(count);
    rows.push_back(json{{"mode", to_string(m)},
                        {"sessions", count},
                        {"cycles", cycles / n},
                        {"initial_preferences", initial / n},
                        {"final_preferences", final_count / n},
                        {"increment", increment / n}});
  }
  return json{{"rows", rows}};
}

struct CritiqueService::Session {
  std::mutex mutex;
  std::vector<InteractionEvent> events;
  SessionState state;
  std::filesystem::path log;
};

CritiqueService::CritiqueService(ServiceConfig config) : config_(std::move(config)) {
  config_.suggestion.validate();
  if (!config_.data_dir.empty()) {
    std::filesystem::create_directories(config_.data_dir / "sessions");
    std::filesystem::create_directories(config_.data_dir / "catalogs");
    load_data_dir();
  }
}

CritiqueService::~CritiqueService() = default;

void CritiqueService::load_data_dir() {
  for (const auto& entry : std::filesystem::directory_iterator(config_.data_dir / "catalogs")) {
    if (entry.path().extension() != ".json") continue;
    catalogs_[entry.path().stem().string()] =
        std::make_shared<const Catalog>(load_catalog_file(entry.path()));
  }
  for (const auto& entry : std::filesystem::directory_iterator(config_.data_dir / "sessions")) {
    if (entry.path().extension() != ".jsonl") continue;
    auto session = std::make_unique<Session>();
    session->events = read_event_log(entry.path());
    session->state = fold_history(session->events);
    session->log = entry.path();
    const auto id = session->state.id;
    if (id.size() > 1 && id[0] == 's') {
      try {
        next_session_ = std::max<std::size_t>(next_session_, std::stoull(id.substr(1)) + 1);
      } catch (const std::exception&) {
      }
    }
    sessions_[id] = std::move(session);
  }
}

void CritiqueService::add_catalog(const std::string& id, Catalog catalog) {
  check_identifier(id, "catalog_id");
  std::unique_lock lock(mutex_);
  if (auto it = catalogs_.find(id); it != catalogs_.end()) {
    if (*it->second == catalog) return;
    throw Error(ErrorCode::conflict, "catalog '" + id + "' already exists", "catalog_id");
  }
  if (!config_.data_dir.empty()) {
    std::ofstream out(config_.data_dir / "catalogs" / (id + ".json"));
    write_catalog(out, catalog, CatalogFormat::json);
  }
  catalogs_[id] = std::make_shared<const Catalog>(std::move(catalog));
}

std::vector<std::string> CritiqueService::catalog_ids() const {
  std::shared_lock lock(mutex_);
  std::vector<std::string> ids;
  for (const auto& [id, _] : catalogs_) ids.push_back(id);
  return ids;
}

std::shared_ptr<const Catalog> CritiqueService::catalog(const std::string& id) const {
  std::shared_lock lock(mutex_);
  auto it = catalogs_.find(id);
  if (it == catalogs_.end()) throw Error(ErrorCode::not_found, "unknown catalog '" + id + "'", "catalog_id");
  return it->second;
}

CritiqueService::Session& CritiqueService::find_session(const std::string& id) const {
  std::shared_lock lock(mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw Error(ErrorCode::not_found, "unknown session '" + id + "'", "session_id");
  return *it->second;
}

void CritiqueService::append(Session& session, std::string kind, json payload) {
  InteractionEvent e;
  e.seq = session.events.size();
  e.ts = now_iso8601();
  e.session = session.state.id.empty() ? session.log.stem().string() : session.state.id;
  e.cycle = session.state.summary.cycles + (kind == "display_shown" ? 1 : 0);
  e.kind = std::move(kind);
  e.payload = std::move(payload);
  apply_event(session.state, e);
  if (!session.log.empty()) {
    std::ofstream out(session.log, std::ios::app);
    out << event_to_json(e).dump() << '\n';
    if (!out) throw Error(ErrorCode::config, "cannot write event log " + session.log.string());
  }
  session.events.push_back(std::move(e));
}

std::string CritiqueService::create_session(const std::string& catalog_id, DisplayMode mode) {
  catalog(catalog_id);
  auto session = std::make_unique<Session>();
  std::unique_lock lock(mutex_);
  char buf[24];
  std::snprintf(buf, sizeof buf, "s%06zu", next_session_++);
  const std::string id = buf;
  session->state.id = id;
  if (!config_.data_dir.empty()) session->log = config_.data_dir / "sessions" / (id + ".jsonl");
  append(*session, "session_created", json{{"catalog_id", catalog_id}, {"mode", to_string(mode)}});
  sessions_[id] = std::move(session);
  return id;
}

json CritiqueService::update_preferences(const std::string& session_id, const json& edits) {
  auto& session = find_session(session_id);
  std::lock_guard lock(session.mutex);
  if (session.state.summary.closed) throw Error(ErrorCode::conflict, "session is closed", "session_id");
  const auto catalog_ptr = catalog(session.state.catalog_id);
  const auto& cat = *catalog_ptr;
  if (!edits.is_array() || edits.empty()) {
    throw Error(ErrorCode::validation, "edits must be a non-empty array", "edits");
  }

  PreferenceModel model = session.state.model;
  std::vector<std::pair<std::string, json>> pending;
  auto locate = [&](const json& edit) -> std::size_t {
    if (edit.contains("index")) {
      if (!edit["index"].is_number_unsigned()) throw Error(ErrorCode::validation, "index must be a non-negative integer", "index");
      const auto i = edit["index"].get<std::size_t>();
      if (i >= model.size()) throw Error(ErrorCode::validation, "no preference at index " + std::to_string(i), "index");
      return i;
    }
    if (edit.contains("attr") && edit["attr"].is_string()) {
      const auto attr = edit["attr"].get<std::string>();
      std::optional<std::size_t> found;
      for (std::size_t i = 0; i < model.size(); ++i) {
        if (model.preferences[i].attr != attr) continue;
        if (found) throw Error(ErrorCode::validation, "several preferences on '" + attr + "'; use index", "attr");
        found = i;
      }
      if (!found) throw Error(ErrorCode::validation, "no preference on '" + attr + "'", "attr");
      return *found;
    }
    throw Error(ErrorCode::validation, "edit needs an index or attr", "index");
  };
  for (const auto& edit : edits) {
    if (!edit.is_object() || !edit.contains("op") || !edit["op"].is_string()) {
      throw Error(ErrorCode::validation, "each edit needs an op", "op");
    }
    const auto op = edit["op"].get<std::string>();
    if (op == "add") {
      if (!edit.contains("pref")) throw Error(ErrorCode::validation, "add needs a pref", "pref");
      auto pref = preference_from_edit(edit["pref"], cat, config_.relational_tolerance);
      model.preferences.push_back(pref);
      pending.emplace_back("prefs_added", json{{"index", model.size() - 1}, {"pref", preference_to_json(pref)}});
    } else if (op == "change") {
      const auto i = locate(edit);
      if (!edit.contains("pref")) throw Error(ErrorCode::validation, "change needs a pref", "pref");
      auto pref = preference_from_edit(edit["pref"], cat, config_.relational_tolerance);
      json previous = preference_to_json(model.preferences[i]);
      model.preferences[i] = pref;
      pending.emplace_back("prefs_changed",
                           json{{"index", i}, {"pref", preference_to_json(pref)}, {"previous", previous}});
    } else if (op == "remove") {
      const auto i = locate(edit);
      json removed = preference_to_json(model.preferences[i]);
      model.preferences.erase(model.preferences.begin() + static_cast<std::ptrdiff_t>(i));
      pending.emplace_back("prefs_removed", json{{"index", i}, {"pref", removed}});
    } else {
      throw Error(ErrorCode::validation, "unknown op '" + op + "'", "op");
    }
  }
  validate(model, cat);
  for (auto& [kind, payload] : pending) append(session, kind, std::move(payload));
  return json{{"session_id", session_id},
              {"model", model_to_json(session.state.model)},
              {"cycle", session.state.summary.cycles}};
}

json CritiqueService::get_display(const std::string& session_id) {
  auto& session = find_session(session_id);
  std::lock_guard lock(session.mutex);
  if (session.state.summary.closed) throw Error(ErrorCode::conflict, "session is closed", "session_id");
  const auto catalog_ptr = catalog(session.state.catalog_id);
  const auto display = compute_display(*catalog_ptr, session.state.model, session.state.mode, config_);
  append(session, "display_shown", json{{"candidates", display.candidates}, {"suggestions", display.suggestions}});
  json candidates = json::array();
  json suggestions = json::array();
  for (const auto& id : display.candidates) candidates.push_back(option_json(*catalog_ptr, id));
  for (const auto& id : display.suggestions) suggestions.push_back(option_json(*catalog_ptr, id));
  return json{{"session_id", session_id},
              {"cycle", session.state.summary.cycles},
              {"mode", to_string(session.state.mode)},
              {"candidates", candidates},
              {"suggestions", suggestions}};
}

json CritiqueService::record_final_choice(const std::string& session_id, const std::string& option_id) {
  auto& session = find_session(session_id);
  std::lock_guard lock(session.mutex);
  if (session.state.summary.closed) throw Error(ErrorCode::conflict, "session is closed", "session_id");
  const auto catalog_ptr = catalog(session.state.catalog_id);
  if (!catalog_ptr->find_option(option_id)) {
    throw Error(ErrorCode::not_found, "unknown option '" + option_id + "'", "option_id");
  }
  if (!session.state.last_display || !session.state.last_display->shows(option_id)) {
    throw Error(ErrorCode::validation, "option '" + option_id + "' is not in the last display", "option_id");
  }
  append(session, "final_choice", json{{"option_id", option_id}});
  return summary_json(session.state.summary);
}

json CritiqueService::aggregate_stats(std::optional<DisplayMode> mode) const {
  std::vector<Session*> sessions;
  {
    std::shared_lock lock(mutex_);
    for (const auto& [id, session] : sessions_) sessions.push_back(session.get());
  }
  std::vector<SessionSummary> summaries;
  for (auto* session : sessions) {
    std::lock_guard session_lock(session->mutex);
    summaries.push_back(session->state.summary);
  }
  return compute_stats(summaries, mode);
}

json CritiqueService::session_json(const std::string& session_id) const {
  auto& session = find_session(session_id);
  std::lock_guard lock(session.mutex);
  json out = summary_json(session.state.summary);
  out["model"] = model_to_json(session.state.model);
  return out;
}

std::vector<InteractionEvent> CritiqueService::history(const std::string& session_id) const {
  auto& session = find_session(session_id);
  std::lock_guard lock(session.mutex);
  return session.events;
}

}  // namespace critique
