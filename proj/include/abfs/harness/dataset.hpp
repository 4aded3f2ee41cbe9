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

// Labelled examples on disk and the prompt template that wraps them.

#ifndef ABFS_HARNESS_DATASET_HPP_
#define ABFS_HARNESS_DATASET_HPP_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace abfs::harness {

struct DatasetRecord {
  std::string id;
  std::string text;
  std::string label;

  friend bool operator==(const DatasetRecord&, const DatasetRecord&) = default;
};

enum class DatasetFormat { kJsonl, kCsv };

std::optional<DatasetFormat> ParseDatasetFormat(std::string_view name);
// From the file extension; nullopt if it is neither .jsonl nor .csv.
std::optional<DatasetFormat> GuessDatasetFormat(
    const std::filesystem::path& path);

// Records in file order. JSONL lines carry "text" and "label" and may carry
// "id"; blank lines are skipped. CSV needs a header naming text and label
// columns (id optional) and follows RFC 4180 quoting. Records without an id
// get their 1-based line number, zero-padded to six digits.
//
// Throws ResourceError if the file cannot be read and DatasetParseError,
// with the offending line, for a missing or empty field, malformed JSON or a
// repeated id.
std::vector<DatasetRecord> LoadDataset(const std::filesystem::path& path,
                                       DatasetFormat format);

void SaveJsonl(std::span<const DatasetRecord> records,
               const std::filesystem::path& path);

inline constexpr std::string_view kExamplePlaceholder = "{example}";

// A template with the example substituted in. Bytes outside
// [example_begin, example_end) belong to the prompt.
struct RenderedInput {
  std::string text;
  std::size_t example_begin = 0;
  std::size_t example_end = 0;
};

// Replaces the first {example} with `example`. The example text is not
// scanned for placeholders. Throws ConfigError if the template has none.
RenderedInput RenderInput(std::string_view prompt_template,
                          std::string_view example);

}  // namespace abfs::harness

#endif  // ABFS_HARNESS_DATASET_HPP_
