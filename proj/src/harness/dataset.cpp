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

#include "abfs/harness/dataset.hpp"

#include <fstream>
#include <iterator>
#include <map>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "json.hpp"

#include "abfs/errors.hpp"

namespace abfs::harness {

namespace {

std::string AutoId(std::size_t line) { return fmt::format("{:06d}", line); }

std::string ReadAll(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ResourceError("cannot open dataset " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Strings stay as they are; numbers (integer class ids) are printed.
std::optional<std::string> FieldText(const nlohmann::json& obj,
                                     const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (it->is_string()) return it->get<std::string>();
  if (it->is_number_integer()) return it->dump();
  return std::nullopt;
}

class RecordSink {
 public:
  explicit RecordSink(const std::filesystem::path& path) : path_(path) {}

  void Add(std::size_t line, std::optional<std::string> id,
           std::optional<std::string> text, std::optional<std::string> label) {
    if (!text || text->empty()) Fail(line, "missing or empty 'text'");
    if (!label || label->empty()) Fail(line, "missing or empty 'label'");
    std::string rid = id && !id->empty() ? *id : AutoId(line);
    if (!ids_.insert(rid).second) Fail(line, "duplicate id '" + rid + "'");
    records_.push_back({std::move(rid), std::move(*text), std::move(*label)});
  }

  [[noreturn]] void Fail(std::size_t line, const std::string& what) const {
    throw DatasetParseError(path_.string(), line, what);
  }

  std::vector<DatasetRecord> Take() { return std::move(records_); }

 private:
  std::filesystem::path path_;
  std::set<std::string> ids_;
  std::vector<DatasetRecord> records_;
};

std::vector<DatasetRecord> LoadJsonl(const std::filesystem::path& path) {
  std::istringstream in(ReadAll(path));
  RecordSink sink(path);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    auto j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) sink.Fail(n, "not a JSON object");
    sink.Add(n, FieldText(j, "id"), FieldText(j, "text"),
             FieldText(j, "label"));
  }
  return sink.Take();
}

// One CSV record. `line` is where it starts; quoted fields may span lines.
struct CsvRow {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

std::vector<CsvRow> ParseCsv(const std::string& data, const RecordSink& sink) {
  std::vector<CsvRow> rows;
  CsvRow row;
  std::string field;
  bool quoted = false;
  bool row_has_content = false;
  std::size_t line = 1;
  row.line = 1;
  auto end_row = [&] {
    row.fields.push_back(std::move(field));
    field.clear();
    if (row_has_content || row.fields.size() > 1 ||
        !row.fields.front().empty()) {
      rows.push_back(std::move(row));
    }
    row = CsvRow{};
    row_has_content = false;
  };
  for (std::size_t i = 0; i < data.size(); ++i) {
    const char c = data[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < data.size() && data[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        quoted = true;
        row_has_content = true;
        break;
      case ',':
        row.fields.push_back(std::move(field));
        field.clear();
        break;
      case '\r':
        break;
      case '\n':
        end_row();
        row.line = ++line;
        break;
      default:
        field.push_back(c);
    }
  }
  if (quoted) sink.Fail(row.line, "unterminated quoted field");
  if (!field.empty() || !row.fields.empty() || row_has_content) end_row();
  return rows;
}

std::vector<DatasetRecord> LoadCsv(const std::filesystem::path& path) {
  RecordSink sink(path);
  const std::vector<CsvRow> rows = ParseCsv(ReadAll(path), sink);
  if (rows.empty()) sink.Fail(1, "missing header");

  std::map<std::string, std::size_t> column;
  for (std::size_t i = 0; i < rows[0].fields.size(); ++i) {
    column.emplace(rows[0].fields[i], i);
  }
  if (!column.contains("text") || !column.contains("label")) {
    sink.Fail(rows[0].line, "header needs 'text' and 'label' columns");
  }
  auto get = [&](const CsvRow& r,
                 const char* name) -> std::optional<std::string> {
    auto it = column.find(name);
    if (it == column.end() || it->second >= r.fields.size()) {
      return std::nullopt;
    }
    return r.fields[it->second];
  };
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const CsvRow& r = rows[i];
    sink.Add(r.line, get(r, "id"), get(r, "text"), get(r, "label"));
  }
  return sink.Take();
}

}  // namespace

std::optional<DatasetFormat> ParseDatasetFormat(std::string_view name) {
  if (name == "jsonl") return DatasetFormat::kJsonl;
  if (name == "csv") return DatasetFormat::kCsv;
  return std::nullopt;
}

std::optional<DatasetFormat> GuessDatasetFormat(
    const std::filesystem::path& path) {
  const std::string ext = path.extension().string();
  if (ext == ".jsonl") return DatasetFormat::kJsonl;
  if (ext == ".csv") return DatasetFormat::kCsv;
  return std::nullopt;
}

std::vector<DatasetRecord> LoadDataset(const std::filesystem::path& path,
                                       DatasetFormat format) {
  return format == DatasetFormat::kJsonl ? LoadJsonl(path) : LoadCsv(path);
}

void SaveJsonl(std::span<const DatasetRecord> records,
               const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ResourceError("cannot write " + path.string());
  for (const auto& r : records) {
    out << nlohmann::json{{"id", r.id}, {"text", r.text}, {"label", r.label}}
               .dump()
        << '\n';
  }
}

RenderedInput RenderInput(std::string_view prompt_template,
                          std::string_view example) {
  const std::size_t at = prompt_template.find(kExamplePlaceholder);
  if (at == std::string_view::npos) {
    throw ConfigError("prompt template lacks the {example} placeholder");
  }
  RenderedInput out;
  out.text.reserve(prompt_template.size() + example.size());
  out.text.append(prompt_template.substr(0, at));
  out.example_begin = out.text.size();
  out.text.append(example);
  out.example_end = out.text.size();
  out.text.append(prompt_template.substr(at + kExamplePlaceholder.size()));
  return out;
}

}  // namespace abfs::harness
