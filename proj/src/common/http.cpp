// Copyright 2026 The ABFS Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "abfs/common/http.hpp"

#include <cstdlib>

#include "httplib.h"

#include "abfs/errors.hpp"

namespace abfs {

Endpoint ParseEndpoint(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw ConfigError("endpoint '" + url + "' has no scheme");
  }
  const std::string scheme = url.substr(0, scheme_end);
  if (scheme != "http" && scheme != "https") {
    throw ConfigError("endpoint scheme must be http or https: '" + url + "'");
  }
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
  if (scheme == "https") {
    throw ConfigError("this build has no TLS support; use an http endpoint");
  }
#endif
  const auto host_start = scheme_end + 3;
  const auto path_start = url.find('/', host_start);
  Endpoint ep;
  ep.scheme_host_port = url.substr(0, path_start);
  ep.path = path_start == std::string::npos ? "/" : url.substr(path_start);
  if (ep.scheme_host_port.size() <= host_start) {
    throw ConfigError("endpoint '" + url + "' has no host");
  }
  return ep;
}

HttpResult PostJson(const Endpoint& endpoint, const std::string& json_body,
                    std::chrono::milliseconds timeout,
                    const std::optional<std::string>& bearer_token) {
  httplib::Client client(endpoint.scheme_host_port);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(timeout);
  const auto usecs =
      std::chrono::duration_cast<std::chrono::microseconds>(timeout - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_write_timeout(secs.count(), usecs.count());

  httplib::Headers headers;
  if (bearer_token) {
    headers.emplace("Authorization", "Bearer " + *bearer_token);
  }
  HttpResult out;
  auto res = client.Post(endpoint.path, headers, json_body, "application/json");
  if (!res) {
    out.error = httplib::to_string(res.error());
    return out;
  }
  out.status = res->status;
  out.body = res->body;
  return out;
}

std::optional<std::string> TokenFromEnv(const std::string& variable) {
  const char* value = std::getenv(variable.c_str());
  if (value == nullptr || *value == '\0') return std::nullopt;
  return std::string(value);
}

}  // namespace abfs
