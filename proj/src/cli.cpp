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

#include "critique/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

#include "critique/catalog.hpp"
#include "critique/dominance.hpp"
#include "critique/error.hpp"
#include "critique/http_server.hpp"
#include "critique/preference.hpp"
#include "critique/random_catalog.hpp"
#include "critique/service.hpp"
#include "critique/sim.hpp"
#include "critique/suggest.hpp"

namespace critique {

namespace {

using nlohmann::json;

// --config files are JSON objects; nested objects address subcommands, e.g.
// {"seed": 3, "simulate": {"runs": 20}}.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App*, bool, bool, std::string) const override { return "{}"; }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    json document;
    try {
      input >> document;
    } catch (const json::exception& e) {
      throw CLI::ConversionError(std::string("config file is not valid JSON: ") + e.what());
    }
    if (!document.is_object()) throw CLI::ConversionError("config file must hold a JSON object");
    std::vector<CLI::ConfigItem> items;
    collect(document, {}, items);
    return items;
  }

 private:
  static void collect(const json& object, const std::vector<std::string>& parents,
                      std::vector<CLI::ConfigItem>& items) {
    for (const auto& [key, value] : object.items()) {
      if (value.is_object()) {
        auto nested = parents;
        nested.push_back(key);
        collect(value, nested, items);
        continue;
      }
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = key;
      if (value.is_array()) {
        for (const auto& v : value) item.inputs.push_back(scalar(v, key));
      } else {
        item.inputs.push_back(scalar(value, key));
      }
      items.push_back(std::move(item));
    }
  }

  static std::string scalar(const json& v, const std::string& key) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number()) return v.dump();
    throw CLI::ConversionError("unsupported config value for '" + key + "'");
  }
};

std::string format_number(double x) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

CatalogFormat format_for(const std::string& path, const std::string& requested) {
  if (requested == "csv") return CatalogFormat::csv;
  if (requested == "json") return CatalogFormat::json;
  if (!requested.empty()) throw Error(ErrorCode::config, "unknown format '" + requested + "'", "format");
  return path.size() >= 4 && path.substr(path.size() - 4) == ".csv" ? CatalogFormat::csv : CatalogFormat::json;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::not_found, "cannot open " + path, path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::parse, path + ": " + e.what());
  }
}

// Writes to `path`, or to `out` when path is "-".
template <typename Fn>
void emit(const std::string& path, std::ostream& out, Fn write) {
  if (path == "-") {
    write(out);
    return;
  }
  std::ofstream file(path);
  if (!file) throw Error(ErrorCode::config, "cannot write " + path, path);
  write(file);
}

NumericFamily parse_family(const std::string& text) {
  if (text == "threshold") return NumericFamily::threshold;
  if (text == "directional") return NumericFamily::directional;
  if (text == "peaked") return NumericFamily::peaked;
  throw Error(ErrorCode::config, "unknown family '" + text + "'", "family");
}

const std::vector<Strategy>& all_strategies() {
  static const std::vector<Strategy> order{Strategy::random,   Strategy::extremes,
                                           Strategy::diversity, Strategy::counting,
                                           Strategy::prob_independent, Strategy::prob_joint};
  return order;
}

std::string column_name(Strategy s) {
  return s == Strategy::extremes ? "extreme" : std::string(to_string(s));
}

struct GenCatalogArgs {
  std::size_t n = 0;
  std::string attrs = "9int";
  std::string spec;
  std::string schema;
  std::string out = "-";
  std::string format;
};

struct SuggestArgs {
  std::string catalog;
  std::string model;
  std::string strategy = "prob2";
  std::string criterion = "pareto";
  std::size_t set = 1;
  std::string mode = "multi";
  std::string family = "threshold";
  double tolerance = 0.0;
  double polarity_weight = 0.5;
  std::string out;
};

struct SimulateArgs {
  std::string catalog;
  std::string catalog_spec;
  std::size_t m = 9;
  std::size_t runs = 100;
  std::string strategy = "all";
  std::size_t candidates = 1;
  std::size_t suggestions = 5;
  std::string criterion = "pareto";
  std::string hidden_family = "peaked";
  double hidden_tolerance = 0.1;
  std::string label;
  std::string out_dir = ".";
};

struct ServeArgs {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string data_dir;
  std::vector<std::string> catalogs;
  std::string criterion = "utility";
};

void gen_catalog(const GenCatalogArgs& a, std::uint64_t seed, std::ostream& out) {
  CatalogSpec spec;
  if (!a.spec.empty()) {
    spec = parse_catalog_spec(a.spec);
  } else {
    if (!a.schema.empty()) {
      auto doc = read_json_file(a.schema);
      if (doc.is_object() && doc.contains("schema")) doc = doc["schema"];
      if (!doc.is_array()) throw Error(ErrorCode::config, "schema file must hold an array", "schema");
      for (const auto& item : doc) spec.attributes.push_back(schema_from_json(item));
    } else {
      spec.attributes = parse_attribute_mix(a.attrs);
    }
    spec.n = a.n;
  }
  const auto catalog = generate_random_catalog(spec, seed);
  const auto format = format_for(a.out, a.format);
  emit(a.out, out, [&](std::ostream& o) { write_catalog(o, catalog, format); });
}

void suggest(const SuggestArgs& a, std::uint64_t seed, std::ostream& out) {
  const auto catalog = load_catalog_file(a.catalog);
  const auto model = model_from_json(read_json_file(a.model));
  validate(model, catalog);

  SuggestionConfig config;
  config.strategy = parse_strategy(a.strategy);
  config.criterion = parse_criterion(a.criterion);
  config.set_size = a.set;
  if (a.mode == "multi") {
    config.mode = HiddenPrefMode::multi;
  } else if (a.mode == "single") {
    config.mode = HiddenPrefMode::single;
  } else {
    throw Error(ErrorCode::config, "unknown mode '" + a.mode + "'", "mode");
  }
  config.default_family = FamilyChoice{parse_family(a.family), a.tolerance};
  config.polarity_weight = a.polarity_weight;
  config.seed = seed;
  config.validate();

  const auto index = build_dominance_index(model, catalog, config.criterion);
  const auto chosen = select_suggestions(catalog, model, index, config);

  if (!a.out.empty()) {
    SuggestionConfig scoring = config;
    if (scoring.strategy != Strategy::prob_independent) scoring.strategy = Strategy::prob_joint;
    std::vector<SuggestionScore> scores;
    try {
      scores = probabilistic_scores(index, catalog, model, scoring);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::no_suggestion) throw;
      scores = counting_scores(index);
      for (auto& s : scores) s.delta.assign(catalog.attribute_count(), 0.0);
    }
    emit(a.out, out, [&](std::ostream& o) {
      o << "option_id,F_C,F_P";
      for (const auto& attribute : catalog.schema()) o << ",delta_" << attribute.name;
      o << '\n';
      for (const auto& s : scores) {
        o << catalog.option(s.option).id << ',' << s.fc << ',' << format_number(s.fp);
        for (double d : s.delta) o << ',' << format_number(d);
        o << '\n';
      }
    });
  }
  if (a.out != "-") {
    for (auto o : chosen) out << catalog.option(o).id << '\n';
  }
}

void simulate(const SimulateArgs& a, std::uint64_t seed, std::ostream& out) {
  SimConfig base;
  std::optional<Catalog> fixture;
  std::string label = a.label;
  std::size_t attributes = 0;
  if (!a.catalog.empty()) {
    fixture = load_catalog_file(a.catalog);
    attributes = fixture->attribute_count();
  } else {
    base.catalog_spec = parse_catalog_spec(a.catalog_spec.empty() ? "rand-50x9int" : a.catalog_spec);
    attributes = base.catalog_spec->attributes.size();
  }
  if (label.empty()) label = std::to_string(a.m) + "/" + std::to_string(attributes);
  base.m = a.m;
  base.runs = a.runs;
  base.display_candidates = a.candidates;
  base.display_suggestions = a.suggestions;
  base.seed = seed;
  base.criterion = parse_criterion(a.criterion);
  base.hidden.family = parse_family(a.hidden_family);
  base.hidden.tolerance_fraction = a.hidden_tolerance;

  std::vector<Strategy> strategies;
  if (a.strategy == "all") {
    strategies = all_strategies();
  } else {
    strategies.push_back(parse_strategy(a.strategy));
  }

  std::map<Strategy, ExperimentResult> results;
  for (auto s : strategies) {
    SimConfig config = base;
    config.strategy = s;
    results[s] = run_experiment(config, fixture ? &*fixture : nullptr);
  }

  std::filesystem::create_directories(a.out_dir);
  const std::filesystem::path dir(a.out_dir);
  auto open = [](const std::filesystem::path& p) {
    std::ofstream f(p);
    if (!f) throw Error(ErrorCode::config, "cannot write " + p.string(), p.string());
    return f;
  };
  {
    auto f = open(dir / "runs.csv");
    f << "run,strategy,discovered,cycles,found\n";
    for (auto s : strategies) {
      for (const auto& r : results[s].runs) {
        f << r.run << ',' << column_name(s) << ',' << r.discovered << ',' << r.cycles << ','
          << (r.found ? 1 : 0) << '\n';
      }
    }
  }
  std::ostringstream aggregate;
  aggregate << "config";
  for (auto s : all_strategies()) aggregate << ',' << column_name(s);
  aggregate << '\n' << label;
  for (auto s : all_strategies()) {
    aggregate << ',';
    if (results.count(s)) aggregate << format_number(results[s].mean_fraction);
  }
  aggregate << '\n';
  open(dir / "aggregate.csv") << aggregate.str();
  {
    auto f = open(dir / "curve.csv");
    f << "x";
    for (auto s : strategies) f << ',' << column_name(s);
    f << '\n';
    for (std::size_t x = 0; x < a.m; ++x) {
      f << x;
      for (auto s : strategies) f << ',' << format_number(results[s].curve[x]);
      f << '\n';
    }
  }
  out << aggregate.str();
}

HttpServer* active_server = nullptr;

void serve(const ServeArgs& a, std::ostream& out) {
  ServiceConfig config;
  config.data_dir = a.data_dir;
  config.suggestion.criterion = parse_criterion(a.criterion);
  CritiqueService service(config);
  for (const auto& path : a.catalogs) {
    service.add_catalog(std::filesystem::path(path).stem().string(), load_catalog_file(path));
  }
  HttpServer server(service);
  active_server = &server;
  std::signal(SIGINT, [](int) {
    if (active_server) active_server->stop();
  });
  std::signal(SIGTERM, [](int) {
    if (active_server) active_server->stop();
  });
  out << "serving on http://" << a.host << ':' << a.port << std::endl;
  server.listen(a.host, a.port);
  active_server = nullptr;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Example-critiquing search engine: catalogs, suggestions, simulation, service",
               "critique"};
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_config("--config", "", "JSON file setting any flag; flags given on the command line win");
  app.require_subcommand(1);

  std::uint64_t seed = 1;
  app.add_option("--seed", seed, "Random seed")->capture_default_str();

  GenCatalogArgs gen;
  auto* gen_cmd = app.add_subcommand("gen-catalog", "Generate a random catalog");
  gen_cmd->add_option("--n", gen.n, "Number of options");
  gen_cmd->add_option("--attrs", gen.attrs, "Attribute mix, e.g. 9int or 5int+2qual+2ord")->capture_default_str();
  gen_cmd->add_option("--spec", gen.spec, "Full spec such as rand-50x9int (overrides --n/--attrs)");
  gen_cmd->add_option("--schema", gen.schema, "JSON file with the attribute schema to draw from");
  gen_cmd->add_option("--out", gen.out, "Output path, - for stdout")->capture_default_str();
  gen_cmd->add_option("--format", gen.format, "json or csv (default: from the extension)");

  SuggestArgs sug;
  auto* sug_cmd = app.add_subcommand("suggest", "Score options and choose suggestions");
  sug_cmd->add_option("--catalog", sug.catalog, "Catalog file (.json or .csv)")->required();
  sug_cmd->add_option("--model", sug.model, "Preference model JSON")->required();
  sug_cmd->add_option("--strategy", sug.strategy,
                      "counting|prob1|prob2|prob|random|extremes|diversity")->capture_default_str();
  sug_cmd->add_option("--criterion", sug.criterion, "pareto or utility")->capture_default_str();
  sug_cmd->add_option("--set", sug.set, "Number of suggestions")->capture_default_str();
  sug_cmd->add_option("--mode", sug.mode, "Hidden preferences: multi or single")->capture_default_str();
  sug_cmd->add_option("--family", sug.family, "Numeric hidden family: threshold|directional|peaked")
      ->capture_default_str();
  sug_cmd->add_option("--tolerance", sug.tolerance, "Tolerance of the numeric family")->capture_default_str();
  sug_cmd->add_option("--polarity-weight", sug.polarity_weight, "Probability of the low polarity")
      ->capture_default_str();
  sug_cmd->add_option("--out", sug.out, "Score CSV path, - for stdout");

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Run simulated-user experiments");
  auto* sim_catalog = sim_cmd->add_option("--catalog", sim.catalog, "Fixed catalog file");
  sim_cmd->add_option("--catalog-spec", sim.catalog_spec, "Fresh random catalog per run, e.g. rand-50x9int")
      ->excludes(sim_catalog);
  sim_cmd->add_option("--m", sim.m, "Preferences per simulated user")->capture_default_str();
  sim_cmd->add_option("--runs", sim.runs, "Runs per strategy")->capture_default_str();
  sim_cmd->add_option("--strategy", sim.strategy, "Strategy name or all")->capture_default_str();
  sim_cmd->add_option("--candidates", sim.candidates, "Candidates per display")->capture_default_str();
  sim_cmd->add_option("--suggestions", sim.suggestions, "Suggestions per display")->capture_default_str();
  sim_cmd->add_option("--criterion", sim.criterion, "pareto or utility")->capture_default_str();
  sim_cmd->add_option("--hidden-family", sim.hidden_family, "Hidden numeric family: peaked|threshold|directional")
      ->capture_default_str();
  sim_cmd->add_option("--hidden-tolerance", sim.hidden_tolerance, "Hidden tolerance as a fraction of the range")
      ->capture_default_str();
  sim_cmd->add_option("--label", sim.label, "Row label of aggregate.csv (default m/k)");
  sim_cmd->add_option("--out-dir", sim.out_dir, "Directory for runs.csv, aggregate.csv, curve.csv")
      ->capture_default_str();

  ServeArgs srv;
  auto* srv_cmd = app.add_subcommand("serve", "Start the HTTP critiquing service");
  srv_cmd->add_option("--host", srv.host, "Bind address")->capture_default_str();
  srv_cmd->add_option("--port", srv.port, "TCP port")->capture_default_str();
  srv_cmd->add_option("--data-dir", srv.data_dir, "Directory for event logs and catalogs");
  srv_cmd->add_option("--catalog", srv.catalogs, "Catalog file to preload (id = file stem)");
  srv_cmd->add_option("--criterion", srv.criterion, "Suggestion criterion")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return 2;
  }

  try {
    if (*gen_cmd) {
      if (gen.spec.empty() && gen.n == 0) throw Error(ErrorCode::config, "--n or --spec is required", "n");
      gen_catalog(gen, seed, out);
    } else if (*sug_cmd) {
      suggest(sug, seed, out);
    } else if (*sim_cmd) {
      simulate(sim, seed, out);
    } else if (*srv_cmd) {
      serve(srv, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what();
    if (!e.field().empty()) err << " [" << e.field() << "]";
    err << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace critique
