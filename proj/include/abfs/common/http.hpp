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

#ifndef ABFS_COMMON_HTTP_HPP_
#define ABFS_COMMON_HTTP_HPP_

#include <chrono>
#include <optional>
#include <string>

namespace abfs {

struct HttpResult {
  int status = 0;  // 0 when the request never got a response
  std::string body;
  std::string error;  // transport error description, if any

  bool ok() const { return status >= 200 && status < 300; }
};

struct Endpoint {
  std::string scheme_host_port;  // "http://host:port"
  std::string path;              // "/v1/classify"
};

// Splits "http[s]://host[:port][/path]". Throws ConfigError otherwise.
Endpoint ParseEndpoint(const std::string& url);

// One POST of a JSON body. Never throws for transport problems; they come
// back in HttpResult::error. `bearer_token` adds an Authorization header.
HttpResult PostJson(const Endpoint& endpoint, const std::string& json_body,
                    std::chrono::milliseconds timeout,
                    const std::optional<std::string>& bearer_token);

// Reads the auth token from the environment, if set and non-empty.
std::optional<std::string> TokenFromEnv(const std::string& variable);

}  // namespace abfs

#endif  // ABFS_COMMON_HTTP_HPP_
