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

#include <memory>
#include <string>

#include <json.hpp>

#include "critique/error.hpp"
#include "critique/service.hpp"

namespace critique {

int http_status(ErrorCode code);
// {error, detail, field?}
nlohmann::json error_payload(const Error& error);

/// HTTP+JSON front of a CritiqueService.
///   POST /sessions                   {catalog_id, mode}
///   GET  /sessions/{id}
///   POST /sessions/{id}/preferences  [edits] or {edits: [...]}
///   GET  /sessions/{id}/display
///   POST /sessions/{id}/choice       {option_id}
///   GET  /stats?mode=C|C+S
///   GET  /catalogs, POST /catalogs   {id, catalog}
///   GET  /catalogs/{id}
class HttpServer {
 public:
  explicit HttpServer(CritiqueService& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Serves on a background thread; port 0 picks a free port. Returns the
  // bound port.
  int start(const std::string& host, int port);
  // Serves on the calling thread until stop().
  void listen(const std::string& host, int port);
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace critique
