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

// Exception types shared by every module. Resource errors (files that do not
// parse, unreachable backends) and configuration errors are kept apart so the
// CLI can map them onto distinct exit codes.

#ifndef ABFS_ERRORS_HPP_
#define ABFS_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace abfs {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised for malformed or missing input resources (dataset, lexicon, ...).
class ResourceError : public Error {
 public:
  using Error::Error;
};

// Raised for invalid user configuration (bad template, bad flag value, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

class EmptyInput : public Error {
 public:
  EmptyInput() : Error("empty input text") {}
};

// Parse failure that remembers where it happened.
class LocatedParseError : public ResourceError {
 public:
  LocatedParseError(const std::string& kind, std::string file, std::size_t line,
                    const std::string& what)
      : ResourceError(kind + ": " + file + ":" + std::to_string(line) + ": " +
                      what),
        file_(std::move(file)),
        line_(line) {}

  const std::string& file() const { return file_; }
  std::size_t line() const { return line_; }

 private:
  std::string file_;
  std::size_t line_;
};

class LexiconParseError : public LocatedParseError {
 public:
  LexiconParseError(std::string file, std::size_t line, const std::string& what)
      : LocatedParseError("LexiconParseError", std::move(file), line, what) {}
};

class EmbeddingParseError : public LocatedParseError {
 public:
  EmbeddingParseError(std::string file, std::size_t line,
                      const std::string& what)
      : LocatedParseError("EmbeddingParseError", std::move(file), line, what) {}
};

class DatasetParseError : public LocatedParseError {
 public:
  DatasetParseError(std::string file, std::size_t line, const std::string& what)
      : LocatedParseError("DatasetParseError", std::move(file), line, what) {}
};

class SimilarityUndefined : public Error {
 public:
  SimilarityUndefined() : Error("cosine similarity undefined for zero vector") {}
};

// The per-example query budget would be exceeded by the next backend call.
class BudgetExhausted : public Error {
 public:
  explicit BudgetExhausted(std::size_t max_query)
      : Error("query budget exhausted (max " + std::to_string(max_query) +
              ")") {}
};

// A classifier backend failed after all retries. Carries the last raw body.
class BackendError : public ResourceError {
 public:
  BackendError(const std::string& what, std::string raw_body)
      : ResourceError("BackendError: " + what), raw_body_(std::move(raw_body)) {}

  const std::string& raw_body() const { return raw_body_; }

 private:
  std::string raw_body_;
};

// A backend answered with something outside the agreed protocol.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

class EmptyCorpus : public Error {
 public:
  EmptyCorpus() : Error("cannot train a language model on an empty corpus") {}
};

}  // namespace abfs

#endif  // ABFS_ERRORS_HPP_
