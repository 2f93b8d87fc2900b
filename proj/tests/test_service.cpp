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


#include <doctest.h>

#include <httplib.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <fstream>

#include "critique/error.hpp"
#include "critique/http_server.hpp"
#include "critique/service.hpp"
#include "support.hpp"

using namespace critique;
using namespace critique::testing;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::parse;
}

struct TempDir {
  fs::path path;
  TempDir() {
    static std::atomic<int> counter{0};
    path = fs::temp_directory_path() /
           ("critique-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

json rel(const std::string& attr, const std::string& op, json value, int weight) {
  return {{"attr", attr}, {"operator", op}, {"value", value}, {"weight", weight}};
}

json add(json pref) { return json::array({{{"op", "add"}, {"pref", pref}}}); }

std::vector<std::string> shown(const json& display, const char* part) {
  std::vector<std::string> out;
  for (const auto& o : display[part]) out.push_back(o["id"]);
  return out;
}

std::vector<fs::path> fixture_logs() {
  std::vector<fs::path> logs;
  for (const auto& entry : fs::directory_iterator(fixture_dir() / "service")) {
    if (entry.path().extension() == ".jsonl") logs.push_back(entry.path());
  }
  std::sort(logs.begin(), logs.end());
  return logs;
}

json expected_stats() {
  std::ifstream in(fixture_dir() / "service" / "stats_expected.json");
  return json::parse(in);
}

struct Service {
  CritiqueService service;
  explicit Service(ServiceConfig config = {}) : service(std::move(config)) {
    service.add_catalog("housing", housing());
  }
};

}  // namespace

TEST_SUITE("service") {

TEST_CASE("create sessions") {
  Service s;
  auto a = s.service.create_session("housing", DisplayMode::candidates_plus_suggestions);
  auto b = s.service.create_session("housing", DisplayMode::candidates_only);
  CHECK(a != b);
  auto state = s.service.session_json(a);
  CHECK(state["model"].empty());
  CHECK(state["closed"] == false);
  CHECK(s.service.history(a).size() == 1);
  CHECK(code_of([&] { s.service.create_session("boats", DisplayMode::candidates_only); }) ==
        ErrorCode::not_found);
  CHECK(code_of([&] { s.service.session_json("s999999"); }) == ErrorCode::not_found);
}

TEST_CASE("relational preferences map to variants") {
  auto c = housing();
  auto less = preference_from_edit(rel("rent", "less", 600, 4), c, 0.05);
  CHECK(less == Preference{"rent", Threshold{Polarity::less_than, 600, 20}, 4});
  auto more = preference_from_edit(rel("distance", "greater", 10, 2), c, 0.05);
  CHECK(more == Preference{"distance", Threshold{Polarity::greater_than, 10, 1.5}, 2});
  auto near = preference_from_edit(rel("distance", "equal", 5, 1), c, 0.05);
  CHECK(near == Preference{"distance", Peaked{5, 1.5}, 1});
  auto label = preference_from_edit(rel("type", "equal", "studio", 3), c, 0.05);
  CHECK(label == Preference{"type", QualitativeValue{"studio"}, 3});
  CHECK(code_of([&] { preference_from_edit(rel("type", "less", "studio", 3), c, 0.05); }) ==
        ErrorCode::type);
  auto exchange = preference_from_edit(preference_to_json(cheaper()), c, 0.05);
  CHECK(exchange == cheaper());
}

TEST_CASE("preference edits") {
  Service s;
  auto id = s.service.create_session("housing", DisplayMode::candidates_plus_suggestions);
  auto r = s.service.update_preferences(id, add(rel("rent", "less", 600, 4)));
  CHECK(r["model"].size() == 1);
  CHECK(r["model"][0]["variant"] == "threshold");
  CHECK(r["model"][0]["theta"] == 600.0);
  CHECK(r["model"][0]["weight"] == 4);

  auto before = s.service.history(id).size();
  CHECK(code_of([&] {
          s.service.update_preferences(id, json::array({{{"op", "remove"}, {"attr", "type"}}}));
        }) == ErrorCode::validation);
  CHECK(code_of([&] { s.service.update_preferences(id, add(rel("rent", "less", 600, 9))); }) ==
        ErrorCode::validation);
  CHECK(code_of([&] { s.service.update_preferences(id, add(rel("rent", "less", 5000, 3))); }) ==
        ErrorCode::validation);
  // a failing second edit rolls back the first
  json mixed = json::array({{{"op", "add"}, {"pref", rel("type", "equal", "studio", 2)}},
                            {{"op", "add"}, {"pref", rel("balcony", "equal", 1, 2)}}});
  CHECK(code_of([&] { s.service.update_preferences(id, mixed); }) == ErrorCode::validation);
  CHECK(s.service.history(id).size() == before);
  CHECK(s.service.session_json(id)["model"].size() == 1);

  s.service.update_preferences(
      id, json::array({{{"op", "change"}, {"attr", "rent"}, {"pref", rel("rent", "less", 550, 4)}}}));
  auto history = s.service.history(id);
  CHECK(history.size() == before + 1);
  CHECK(history.back().kind == "prefs_changed");
  auto model = fold_history(history).model;
  REQUIRE(model.size() == 1);
  CHECK(std::get<Threshold>(model.preferences[0].variant).theta == 550);
}

TEST_CASE("display modes") {
  Service s;
  auto c = s.service.create_session("housing", DisplayMode::candidates_only);
  CHECK(code_of([&] { s.service.get_display(c); }) == ErrorCode::empty_model);
  CHECK(s.service.session_json(c)["cycles"] == 0);
  s.service.update_preferences(c, add(preference_to_json(cheaper())));
  auto only = s.service.get_display(c);
  CHECK(only["cycle"] == 1);
  CHECK(shown(only, "candidates") == std::vector<std::string>{"o1", "o2", "o3", "o4", "o5", "o6"});
  CHECK(only["suggestions"].empty());

  auto cs = s.service.create_session("housing", DisplayMode::candidates_plus_suggestions);
  s.service.update_preferences(cs, add(preference_to_json(cheaper())));
  auto mixed = s.service.get_display(cs);
  CHECK(shown(mixed, "candidates") == std::vector<std::string>{"o1", "o2", "o3"});
  CHECK(mixed["suggestions"].size() == 3);
  auto again = s.service.get_display(cs);
  CHECK(again["cycle"] == 2);
  CHECK(shown(again, "suggestions") == shown(mixed, "suggestions"));
}

TEST_CASE("pareto criterion with the pinned housing config leads with o4") {
  ServiceConfig config;
  config.suggestion.criterion = Criterion::pareto;
  CritiqueService service(config);
  service.add_catalog("housing", housing_pinned());
  auto id = service.create_session("housing", DisplayMode::candidates_plus_suggestions);
  service.update_preferences(id, add(preference_to_json(cheaper())));
  CHECK(shown(service.get_display(id), "suggestions").front() == "o4");
}

TEST_CASE("small catalogs show every option") {
  auto full = housing();
  std::vector<OptionRecord> four(full.options().begin(), full.options().begin() + 4);
  CritiqueService service;
  service.add_catalog("tiny", Catalog(full.schema(), four));
  auto id = service.create_session("tiny", DisplayMode::candidates_only);
  service.update_preferences(id, add(preference_to_json(cheaper())));
  CHECK(service.get_display(id)["candidates"].size() == 4);
}

TEST_CASE("final choice") {
  Service s;
  auto id = s.service.create_session("housing", DisplayMode::candidates_plus_suggestions);
  s.service.update_preferences(id, add(rel("rent", "less", 600, 4)));
  s.service.update_preferences(id, add(rel("furnished", "equal", "no", 2)));
  CHECK(code_of([&] { s.service.record_final_choice(id, "o1"); }) == ErrorCode::validation);
  auto display = s.service.get_display(id);
  for (auto pref : {rel("distance", "less", 10, 3), rel("type", "equal", "studio", 1),
                    preference_to_json(cheaper())}) {
    s.service.update_preferences(id, add(pref));
  }
  auto listed = shown(display, "candidates");
  auto catalog = housing();
  auto hidden = std::string("o1");
  for (const auto& o : catalog.options()) {
    auto cands = shown(display, "candidates");
    auto sugg = shown(display, "suggestions");
    if (std::find(cands.begin(), cands.end(), o.id) == cands.end() &&
        std::find(sugg.begin(), sugg.end(), o.id) == sugg.end()) {
      hidden = o.id;
    }
  }
  CHECK(code_of([&] { s.service.record_final_choice(id, hidden); }) == ErrorCode::validation);
  CHECK(code_of([&] { s.service.record_final_choice(id, "o99"); }) == ErrorCode::not_found);
  auto summary = s.service.record_final_choice(id, listed.front());
  CHECK(summary["closed"] == true);
  CHECK(summary["initial_preferences"] == 2);
  CHECK(summary["final_preferences"] == 5);
  CHECK(summary["increment"] == 3);
  CHECK(code_of([&] { s.service.update_preferences(id, add(rel("rent", "less", 600, 4))); }) ==
        ErrorCode::conflict);
  CHECK(code_of([&] { s.service.record_final_choice(id, listed.front()); }) == ErrorCode::conflict);
}

TEST_CASE("stats aggregate closed sessions by mode") {
  auto summary = [](DisplayMode mode, std::size_t initial, std::size_t final_count, bool closed) {
    SessionSummary s;
    s.mode = mode;
    s.closed = closed;
    s.cycles = 2;
    s.initial_preferences = initial;
    s.final_preferences = final_count;
    s.increment = static_cast<long>(final_count) - static_cast<long>(initial);
    return s;
  };
  std::vector<SessionSummary> sessions = {
      summary(DisplayMode::candidates_plus_suggestions, 2, 3, true),
      summary(DisplayMode::candidates_plus_suggestions, 1, 4, true),
      summary(DisplayMode::candidates_plus_suggestions, 1, 9, false),
      summary(DisplayMode::candidates_only, 3, 3, true),
  };
  auto cs = compute_stats(sessions, DisplayMode::candidates_plus_suggestions);
  REQUIRE(cs["rows"].size() == 1);
  CHECK(cs["rows"][0]["mode"] == "C+S");
  CHECK(cs["rows"][0]["sessions"] == 2);
  CHECK(cs["rows"][0]["increment"] == 2.0);
  CHECK(cs["rows"][0]["initial_preferences"] == 1.5);
  CHECK(compute_stats(sessions, std::nullopt)["rows"].size() == 2);
  CHECK(compute_stats({}, std::nullopt)["rows"].empty());
}

TEST_CASE("display mode names") {
  CHECK(parse_display_mode("C") == DisplayMode::candidates_only);
  CHECK(parse_display_mode("C+S") == DisplayMode::candidates_plus_suggestions);
  CHECK(to_string(DisplayMode::candidates_plus_suggestions) == "C+S");
  CHECK(code_of([] { parse_display_mode("S"); }) == ErrorCode::validation);
}

TEST_CASE("recorded logs replay to identical displays") {
  auto catalog = housing();
  std::vector<SessionSummary> summaries;
  std::size_t displays = 0;
  for (const auto& log : fixture_logs()) {
    CAPTURE(log.string());
    auto report = replay_session(read_event_log(log), catalog, ServiceConfig{});
    CHECK(report.ok());
    displays += report.displays_checked;
    summaries.push_back(report.state.summary);
  }
  CHECK(displays >= 10);
  CHECK(compute_stats(summaries, std::nullopt) == expected_stats());
}

TEST_CASE("replay flags a tampered display") {
  auto events = read_event_log(fixture_logs().front());
  auto shown_at = std::find_if(events.begin(), events.end(),
                               [](const auto& e) { return e.kind == "display_shown"; });
  REQUIRE(shown_at != events.end());
  std::swap(shown_at->payload["candidates"][0], shown_at->payload["candidates"][1]);
  auto report = replay_session(events, housing(), ServiceConfig{});
  CHECK_FALSE(report.ok());
  CHECK(report.mismatched_cycles == std::vector<std::size_t>{shown_at->cycle});
}

TEST_CASE("malformed logs report their line") {
  TempDir dir;
  auto path = dir.path / "bad.jsonl";
  std::ofstream(path) << event_to_json({0, "t", "s1", 0, "session_created",
                                        {{"catalog_id", "housing"}, {"mode", "C"}}})
                             .dump()
                      << "\n{not json\n";
  try {
    read_event_log(path);
    FAIL("accepted a broken log");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::parse);
    CHECK(std::string(e.what()).find("2") != std::string::npos);
  }
}

TEST_CASE("service restores logs from its data directory") {
  TempDir dir;
  fs::create_directories(dir.path / "sessions");
  for (const auto& log : fixture_logs()) fs::copy(log, dir.path / "sessions" / log.filename());
  {
    ServiceConfig config;
    config.data_dir = dir.path;
    CritiqueService first(config);
    first.add_catalog("housing", housing());
  }
  ServiceConfig config;
  config.data_dir = dir.path;
  CritiqueService service(config);
  CHECK(service.catalog_ids() == std::vector<std::string>{"housing"});
  CHECK(service.aggregate_stats(std::nullopt) == expected_stats());
  auto fresh = service.create_session("housing", DisplayMode::candidates_only);
  CHECK(fresh == "s000006");
  CHECK(fs::exists(dir.path / "sessions" / "s000006.jsonl"));
}

TEST_CASE("catalog registration") {
  CritiqueService service;
  service.add_catalog("housing", housing());
  service.add_catalog("housing", housing());
  CHECK(code_of([&] { service.add_catalog("housing", housing_pinned()); }) == ErrorCode::conflict);
  CHECK(code_of([&] { service.add_catalog("../etc", housing()); }) == ErrorCode::validation);
  CHECK(code_of([&] { service.catalog("boats"); }) == ErrorCode::not_found);
}

TEST_CASE("http api") {
  CritiqueService service;
  HttpServer server(service);
  int port = server.start("127.0.0.1", 0);
  REQUIRE(port > 0);
  httplib::Client client("127.0.0.1", port);

  auto res = client.Post("/catalogs", json{{"id", "housing"}, {"catalog", catalog_to_json(housing())}}.dump(),
                         "application/json");
  REQUIRE(res);
  CHECK(res->status == 201);
  res = client.Get("/catalogs");
  CHECK(json::parse(res->body)["catalogs"][0]["options"] == 7);
  CHECK(client.Get("/catalogs/housing")->status == 200);
  CHECK(client.Get("/catalogs/boats")->status == 404);

  res = client.Post("/sessions", R"({"catalog_id": "housing", "mode": "C+S"})", "application/json");
  REQUIRE(res->status == 201);
  std::string id = json::parse(res->body)["session_id"];

  res = client.Get("/sessions/" + id + "/display");
  CHECK(res->status == 422);
  CHECK(json::parse(res->body)["error"] == "empty_model");

  res = client.Post("/sessions/" + id + "/preferences",
                    json{{"edits", add(rel("rent", "less", 600, 4))}}.dump(), "application/json");
  CHECK(res->status == 200);
  res = client.Post("/sessions/" + id + "/preferences", add(rel("rent", "less", 600, 7)).dump(),
                    "application/json");
  CHECK(res->status == 422);
  CHECK(json::parse(res->body)["field"] == "weight");
  CHECK(client.Post("/sessions/" + id + "/preferences", "{oops", "application/json")->status == 400);

  res = client.Get("/sessions/" + id + "/display");
  REQUIRE(res->status == 200);
  auto display = json::parse(res->body);
  CHECK(display["candidates"].size() == 3);
  CHECK(display["candidates"][0]["values"].contains("furnished"));

  std::string pick = display["candidates"][0]["id"];
  res = client.Post("/sessions/" + id + "/choice", json{{"option_id", pick}}.dump(), "application/json");
  CHECK(res->status == 200);
  CHECK(json::parse(res->body)["closed"] == true);
  res = client.Post("/sessions/" + id + "/choice", json{{"option_id", pick}}.dump(), "application/json");
  CHECK(res->status == 409);

  res = client.Get("/stats?mode=C%2BS");
  REQUIRE(res->status == 200);
  auto stats = json::parse(res->body);
  CHECK(stats["rows"].size() == 1);
  CHECK(stats["rows"][0]["initial_preferences"] == 1.0);
  CHECK(client.Get("/stats?mode=X")->status == 422);
  CHECK(client.Get("/sessions/nope")->status == 404);
  CHECK(json::parse(client.Get("/sessions/" + id)->body)["closed"] == true);
  server.stop();
}

}  // TEST_SUITE
