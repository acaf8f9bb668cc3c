// Copyright 2026 The Restrictplan Authors.
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

#ifndef RESTRICTPLAN_API_H_
#define RESTRICTPLAN_API_H_

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "restrictplan/extraction.h"
#include "restrictplan/store.h"

namespace restrictplan {

struct ApiRequest {
  std::string method;
  // Decoded path, e.g. "/api/polygons/p1/overlaps".
  std::string path;
  // Decoded query parameters.
  std::map<std::string, std::string> query;
  std::string body;
};

struct ApiResponse {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

// JSON API over a store. Transport-agnostic so it can be driven directly in
// tests and bound to HTTP by HttpServer. Holds no per-request state.
class ApiService {
 public:
  ApiService(Store &store, RuleTable rules);

  ApiResponse Handle(const ApiRequest &request) const;

  const RuleTable &rules() const { return rules_; }

 private:
  Store &store_;
  RuleTable rules_;
};

// Error body: {"status": 404, "code": "not_found", "message": "..."}.
ApiResponse ErrorResponse(int status, std::string_view code,
                          const std::string &message);

class HttpServer {
 public:
  // Serves the API under /api and, when given, static files under /.
  explicit HttpServer(const ApiService &api,
                      std::optional<std::filesystem::path> static_dir = {});
  ~HttpServer();
  HttpServer(const HttpServer &) = delete;
  HttpServer &operator=(const HttpServer &) = delete;

  // Returns the bound port, or -1.
  int BindToAnyPort(const std::string &host);
  bool Bind(const std::string &host, int port);
  // Blocks until Stop().
  bool ListenAfterBind();
  void Stop();
  void WaitUntilReady() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace restrictplan

#endif  // RESTRICTPLAN_API_H_
