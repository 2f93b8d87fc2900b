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

#include "critique/http_server.hpp"

#include <thread>

#include <httplib.h>

namespace critique {

using nlohmann::json;

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::parse:
    case ErrorCode::config:
      return 400;
    case ErrorCode::not_found:
      return 404;
    case ErrorCode::conflict:
      return 409;
    case ErrorCode::validation:
    case ErrorCode::type:
    case ErrorCode::domain:
    case ErrorCode::empty_model:
    case ErrorCode::no_suggestion:
      return 422;
  }
  return 500;
}

json error_payload(const Error& error) {
  json out{{"error", to_string(error.code())}, {"detail", error.what()}};
  if (!error.field().empty()) out["field"] = error.field();
  return out;
}

namespace {

void reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

json parse_body(const httplib::Request& req) {
  try {
    return json::parse(req.body);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::parse, std::string("request body is not JSON: ") + e.what());
  }
}

template <typename Fn>
httplib::Server::Handler guarded(Fn fn) {
  return [fn](const httplib::Request& req, httplib::Response& res) {
    try {
      fn(req, res);
    } catch (const Error& e) {
      reply(res, http_status(e.code()), error_payload(e));
    } catch (const json::exception& e) {
      reply(res, 400, json{{"error", "parse_error"}, {"detail", e.what()}});
    } catch (const std::exception& e) {
      reply(res, 500, json{{"error", "internal"}, {"detail", e.what()}});
    }
  };
}

std::string required_string(const json& body, const char* key) {
  if (!body.is_object() || !body.contains(key) || !body[key].is_string()) {
    throw Error(ErrorCode::validation, std::string("missing string field '") + key + "'", key);
  }
  return body[key].get<std::string>();
}

}  // namespace

struct HttpServer::Impl {
  CritiqueService& service;
  httplib::Server server;
  std::thread worker;

  explicit Impl(CritiqueService& s) : service(s) { routes(); }

  void routes() {
    server.Post("/sessions", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const auto body = parse_body(req);
      const auto catalog_id = required_string(body, "catalog_id");
      const auto mode = parse_display_mode(body.value("mode", std::string("C+S")));
      reply(res, 201, json{{"session_id", service.create_session(catalog_id, mode)}});
    }));
    server.Get(R"(/sessions/([^/]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
      reply(res, 200, service.session_json(req.matches[1]));
    }));
    server.Post(R"(/sessions/([^/]+)/preferences)",
                guarded([this](const httplib::Request& req, httplib::Response& res) {
                  auto body = parse_body(req);
                  if (body.is_object() && body.contains("edits")) body = body["edits"];
                  reply(res, 200, service.update_preferences(req.matches[1], body));
                }));
    server.Get(R"(/sessions/([^/]+)/display)",
               guarded([this](const httplib::Request& req, httplib::Response& res) {
                 reply(res, 200, service.get_display(req.matches[1]));
               }));
    server.Post(R"(/sessions/([^/]+)/choice)",
                guarded([this](const httplib::Request& req, httplib::Response& res) {
                  const auto body = parse_body(req);
                  reply(res, 200, service.record_final_choice(req.matches[1], required_string(body, "option_id")));
                }));
    server.Get("/stats", guarded([this](const httplib::Request& req, httplib::Response& res) {
      std::optional<DisplayMode> mode;
      if (req.has_param("mode")) mode = parse_display_mode(req.get_param_value("mode"));
      reply(res, 200, service.aggregate_stats(mode));
    }));
    server.Get("/catalogs", guarded([this](const httplib::Request&, httplib::Response& res) {
      json list = json::array();
      for (const auto& id : service.catalog_ids()) {
        const auto catalog = service.catalog(id);
        list.push_back(json{{"id", id}, {"options", catalog->size()}, {"attributes", catalog->attribute_count()}});
      }
      reply(res, 200, json{{"catalogs", list}});
    }));
    server.Get(R"(/catalogs/([^/]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
      reply(res, 200, catalog_to_json(*service.catalog(req.matches[1])));
    }));
    server.Post("/catalogs", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const auto body = parse_body(req);
      const auto id = required_string(body, "id");
      if (!body.contains("catalog")) throw Error(ErrorCode::validation, "missing field 'catalog'", "catalog");
      auto catalog = catalog_from_json(body["catalog"]);
      const auto size = catalog.size();
      service.add_catalog(id, std::move(catalog));
      reply(res, 201, json{{"id", id}, {"options", size}});
    }));
  }
};

HttpServer::HttpServer(CritiqueService& service) : impl_(std::make_unique<Impl>(service)) {}

HttpServer::~HttpServer() { stop(); }

int HttpServer::start(const std::string& host, int port) {
  int bound = port;
  if (port == 0) {
    bound = impl_->server.bind_to_any_port(host);
  } else if (!impl_->server.bind_to_port(host, port)) {
    bound = -1;
  }
  if (bound < 0) throw Error(ErrorCode::config, "cannot bind " + host + ":" + std::to_string(port), "port");
  impl_->worker = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return bound;
}

void HttpServer::listen(const std::string& host, int port) {
  if (!impl_->server.listen(host, port)) {
    throw Error(ErrorCode::config, "cannot listen on " + host + ":" + std::to_string(port), "port");
  }
}

void HttpServer::stop() {
  if (!impl_) return;
  impl_->server.stop();
  if (impl_->worker.joinable()) impl_->worker.join();
}

}  // namespace critique
