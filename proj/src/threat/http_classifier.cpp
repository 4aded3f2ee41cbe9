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

#include "abfs/threat/http_classifier.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "json.hpp"

#include "abfs/errors.hpp"

namespace abfs::threat {
namespace {

constexpr std::string_view kInputSlot = "{input}";
constexpr std::string_view kLabelsSlot = "{labels}";

bool Known(const std::vector<std::string>& labels, const std::string& l) {
  return std::find(labels.begin(), labels.end(), l) != labels.end();
}

}  // namespace

void PromptProtocol::Validate() const {
  if (prompt_template.find(kInputSlot) == std::string::npos ||
      prompt_template.find(kLabelsSlot) == std::string::npos) {
    throw ConfigError(
        "prompt template must contain both {input} and {labels}");
  }
  if (retry_limit < 0) throw ConfigError("retry_limit must be >= 0");
  ParseEndpoint(endpoint);
}

std::string RenderPrompt(std::string_view prompt_template,
                         std::string_view input,
                         const std::vector<std::string>& labels) {
  std::string joined;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i > 0) joined += ", ";
    joined += labels[i];
  }
  std::string out;
  std::size_t i = 0;
  while (i < prompt_template.size()) {
    if (prompt_template.substr(i).starts_with(kInputSlot)) {
      out += input;
      i += kInputSlot.size();
    } else if (prompt_template.substr(i).starts_with(kLabelsSlot)) {
      out += joined;
      i += kLabelsSlot.size();
    } else {
      out += prompt_template[i++];
    }
  }
  return out;
}

std::optional<ThreatVerdict> ParseVerdictResponse(
    std::string_view body, const std::vector<std::string>& labels) {
  using nlohmann::json;
  json j = json::parse(body, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) return std::nullopt;

  if (auto it = j.find("distribution"); it != j.end()) {
    if (!it->is_object() || it->empty()) return std::nullopt;
    ConfidenceMap conf;
    for (const auto& l : labels) conf[l] = 0.0;
    double total = 0;
    for (const auto& [label, value] : it->items()) {
      if (!value.is_number()) return std::nullopt;
      const double c = value.get<double>();
      if (!std::isfinite(c) || c < 0) return std::nullopt;
      if (!Known(labels, label)) {
        throw ProtocolError("backend answered unknown label '" + label + "'");
      }
      conf[label] = c;
      total += c;
    }
    if (total <= 0) return std::nullopt;
    return MakeVerdict(std::move(conf));
  }

  auto label_it = j.find("label");
  auto conf_it = j.find("confidence");
  if (label_it == j.end() || conf_it == j.end() || !label_it->is_string() ||
      !conf_it->is_number()) {
    return std::nullopt;
  }
  const std::string label = label_it->get<std::string>();
  const double c = conf_it->get<double>();
  if (!std::isfinite(c) || c < 0 || c > 1) return std::nullopt;
  if (!Known(labels, label)) {
    throw ProtocolError("backend answered unknown label '" + label + "'");
  }
  ConfidenceMap conf;
  if (labels.size() == 1) {
    conf[label] = 1.0;
  } else {
    const double rest = (1.0 - c) / static_cast<double>(labels.size() - 1);
    for (const auto& l : labels) conf[l] = l == label ? c : rest;
  }
  return MakeVerdict(std::move(conf));
}

HttpClassifier::HttpClassifier(PromptProtocol protocol,
                               std::vector<std::string> labels)
    : protocol_(std::move(protocol)), labels_(std::move(labels)) {
  protocol_.Validate();
  if (labels_.empty()) throw ConfigError("HTTP classifier needs labels");
  endpoint_ = ParseEndpoint(protocol_.endpoint);
}

ThreatVerdict HttpClassifier::Classify(std::string_view input) const {
  const nlohmann::json request = {
      {"input", RenderPrompt(protocol_.prompt_template, input, labels_)},
      {"labels", labels_}};
  const std::string body = request.dump();
  const auto token = TokenFromEnv(protocol_.auth_env);

  std::string last_body;
  std::string last_problem;
  for (int attempt = 0; attempt <= protocol_.retry_limit; ++attempt) {
    if (attempt > 0) std::this_thread::sleep_for(protocol_.backoff);
    HttpResult res = PostJson(endpoint_, body, protocol_.timeout, token);
    last_body = res.body;
    if (!res.error.empty()) {
      last_problem = res.error;
      continue;
    }
    if (!res.ok()) {
      last_problem = "HTTP status " + std::to_string(res.status);
      continue;
    }
    if (auto verdict = ParseVerdictResponse(res.body, labels_)) return *verdict;
    last_problem = "malformed response";
  }
  throw BackendError(last_problem + " after " +
                         std::to_string(protocol_.retry_limit + 1) +
                         " attempts",
                     last_body);
}

}  // namespace abfs::threat
