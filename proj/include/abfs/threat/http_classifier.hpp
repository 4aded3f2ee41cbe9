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

// Classifier adapter for an LLM served behind HTTP.
//
// Request:   POST {"input": "<rendered prompt>", "labels": ["a", "b", ...]}
// Response:  {"label": "a", "confidence": 0.95}
//        or  {"distribution": {"a": 0.7, "b": 0.3}}
//
// A single (label, confidence) answer is completed into a full map by
// spreading 1 - confidence evenly over the other labels.

#ifndef ABFS_THREAT_HTTP_CLASSIFIER_HPP_
#define ABFS_THREAT_HTTP_CLASSIFIER_HPP_

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "abfs/common/http.hpp"
#include "abfs/threat/classifier.hpp"

namespace abfs::threat {

inline constexpr char kAuthTokenEnv[] = "ABFS_AUTH_TOKEN";

struct PromptProtocol {
  std::string endpoint;
  std::string prompt_template = "{input}\nAnswer with one of: {labels}.";
  int retry_limit = 3;
  std::chrono::milliseconds timeout{30'000};
  std::chrono::milliseconds backoff{1'000};
  std::string auth_env = kAuthTokenEnv;

  // Throws ConfigError unless both placeholders are present, the endpoint
  // parses and retry_limit >= 0.
  void Validate() const;
};

// Replaces {input} and {labels} (comma separated) in one pass; text that
// is substituted in is never expanded again.
std::string RenderPrompt(std::string_view prompt_template,
                         std::string_view input,
                         const std::vector<std::string>& labels);

// Parses one response body. nullopt for anything that is not one of the two
// accepted shapes (the caller retries); ProtocolError when a well-formed
// answer names a label outside `labels`.
std::optional<ThreatVerdict> ParseVerdictResponse(
    std::string_view body, const std::vector<std::string>& labels);

class HttpClassifier final : public Classifier {
 public:
  HttpClassifier(PromptProtocol protocol, std::vector<std::string> labels);

  // Up to retry_limit + 1 attempts with a fixed backoff between them; throws
  // BackendError carrying the last raw body when all of them fail.
  ThreatVerdict Classify(std::string_view input) const override;
  const std::vector<std::string>& labels() const override { return labels_; }

 private:
  PromptProtocol protocol_;
  Endpoint endpoint_;
  std::vector<std::string> labels_;
};

}  // namespace abfs::threat

#endif  // ABFS_THREAT_HTTP_CLASSIFIER_HPP_
