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

#include <atomic>
#include <map>

#include "httplib.h"
#include "restrictplan/api.h"

namespace restrictplan {

struct HttpServer::Impl {
  const ApiService &api;
  httplib::Server server;
};

namespace {

// httplib keeps '+' literally in parsed params, so form encoding is decoded
// here from the raw target.
std::map<std::string, std::string> ParseQuery(const std::string &target) {
  std::map<std::string, std::string> out;
  size_t q = target.find('?');
  if (q == std::string::npos) return out;
  std::string_view rest(target);
  rest.remove_prefix(q + 1);
  while (!rest.empty()) {
    size_t amp = rest.find('&');
    std::string_view pair = rest.substr(0, amp);
    rest = amp == std::string_view::npos ? std::string_view() : rest.substr(amp + 1);
    if (pair.empty()) continue;
    size_t eq = pair.find('=');
    std::string key(pair.substr(0, eq));
    std::string value(eq == std::string_view::npos ? std::string_view() : pair.substr(eq + 1));
    out[httplib::detail::decode_url(key, true)] = httplib::detail::decode_url(value, true);
  }
  return out;
}

void Forward(const ApiService &api, const std::string &method,
             const httplib::Request &req, httplib::Response &res) {
  ApiRequest request;
  request.method = method;
  request.path = req.path;
  request.query = ParseQuery(req.target);
  request.body = req.body;
  ApiResponse response = api.Handle(request);
  res.status = response.status;
  res.set_content(response.body, response.content_type);
}

}  // namespace

HttpServer::HttpServer(const ApiService &api,
                       std::optional<std::filesystem::path> static_dir)
    : impl_(new Impl{api, {}}) {
  auto &srv = impl_->server;
  const ApiService *service = &api;
  const char *pattern = R"(/api/.*)";
  srv.Get(pattern, [service](const httplib::Request &q, httplib::Response &r) {
    Forward(*service, "GET", q, r);
  });
  srv.Post(pattern, [service](const httplib::Request &q, httplib::Response &r) {
    Forward(*service, "POST", q, r);
  });
  srv.Patch(pattern, [service](const httplib::Request &q, httplib::Response &r) {
    Forward(*service, "PATCH", q, r);
  });
  if (static_dir) srv.set_mount_point("/", static_dir->string());
}

HttpServer::~HttpServer() { Stop(); }

int HttpServer::BindToAnyPort(const std::string &host) {
  return impl_->server.bind_to_any_port(host);
}

bool HttpServer::Bind(const std::string &host, int port) {
  return impl_->server.bind_to_port(host, port);
}

bool HttpServer::ListenAfterBind() { return impl_->server.listen_after_bind(); }

void HttpServer::Stop() {
  if (impl_) impl_->server.stop();
}

void HttpServer::WaitUntilReady() const { impl_->server.wait_until_ready(); }

}  // namespace restrictplan
