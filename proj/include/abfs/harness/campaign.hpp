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

// Campaign orchestration: sample examples, search each one for a test case,
// persist one result line per example and aggregate the indicators.
//
// Output directory layout:
//   results.jsonl   one ResultRecord per line, ordered by (repeat, id)
//   timings.jsonl   wall time per example, same order
//   report.json     per-repeat statistics and their mean

#ifndef ABFS_HARNESS_CAMPAIGN_HPP_
#define ABFS_HARNESS_CAMPAIGN_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "abfs/harness/dataset.hpp"
#include "abfs/lexicon/embeddings.hpp"
#include "abfs/lexicon/tokenizer.hpp"
#include "abfs/lexicon/transform_space.hpp"
#include "abfs/lexicon/wordnet.hpp"
#include "abfs/metrics/metrics.hpp"
#include "abfs/metrics/ngram.hpp"
#include "abfs/search/search.hpp"
#include "abfs/threat/classifier.hpp"

namespace abfs::harness {

// "surrogate:PATH" or "http:URL".
struct ThreatSpec {
  enum class Kind { kSurrogate, kHttp };
  Kind kind = Kind::kSurrogate;
  std::string target;

  static ThreatSpec Parse(std::string_view text);  // throws ConfigError
};

// Builds the classifier a spec names. For surrogates a non-empty `labels`
// must match the spec's label set; HTTP adapters require it.
threat::ClassifierPtr MakeClassifier(const ThreatSpec& spec,
                                     const std::vector<std::string>& labels);

struct CampaignConfig {
  std::filesystem::path dataset;
  std::optional<DatasetFormat> format;  // guessed from the extension if unset
  std::string prompt_template = "{example}";
  std::vector<std::string> labels;
  std::string threat;  // ThreatSpec text
  lexicon::Provider provider = lexicon::Provider::kWordNet;
  search::SearchConfig search;
  lexicon::LexiconConfig lexicon;
  std::size_t sample_size = 1000;
  std::size_t repeat = 3;
  std::size_t workers = 0;  // 0: one per logical CPU
  std::filesystem::path out;
  std::size_t ppl_order = 3;           // 0 disables perplexity
  std::optional<std::string> ppl_endpoint;  // external scorer instead

  void Validate() const;  // throws ConfigError
};

// Everything loaded once and shared read-only by the workers.
struct CampaignResources {
  std::vector<DatasetRecord> dataset;
  std::shared_ptr<const lexicon::SynsetLexicon> lexicon;
  std::shared_ptr<const lexicon::EmbeddingTable> embeddings;  // may be null
  threat::ClassifierPtr classifier;
  std::shared_ptr<const metrics::PerplexityScorer> ppl;  // may be null
};

// Loads dataset, lexicon, embeddings, threat model and perplexity scorer.
// Throws ResourceError or ConfigError.
CampaignResources LoadResources(const CampaignConfig& config);

// Built-in perplexity model trained on the dataset texts.
std::shared_ptr<const metrics::PerplexityScorer> TrainPerplexityModel(
    std::span<const DatasetRecord> dataset, std::size_t order);

struct ResultRecord {
  std::string id;
  std::size_t repeat = 0;
  std::string strategy;
  std::string provider;
  std::string status;  // a SearchStatus name or "error"
  std::string error;
  std::string ground_truth;
  std::string original_text;
  std::string final_text;
  std::vector<lexicon::Substitution> edits;
  std::optional<threat::ThreatVerdict> original_verdict;
  std::optional<threat::ThreatVerdict> final_verdict;
  std::size_t queries_used = 0;
  std::size_t iterations = 0;
  std::size_t token_count = 0;  // tokens of the rendered original input
  double change_rate = 0;
  std::optional<double> ppl_original;
  std::optional<double> ppl_final;
  double wall_time = 0;  // seconds; written to timings.jsonl only

  bool success() const { return status == "success"; }
};

void to_json(nlohmann::json& j, const ResultRecord& r);
void from_json(const nlohmann::json& j, ResultRecord& r);

std::vector<ResultRecord> ReadResults(const std::filesystem::path& path);

// Annotated tokens of a rendered input. Prompt tokens on both sides of the
// example are frozen when config.freeze_prompt is set.
lexicon::TokenizedInput PrepareInput(const RenderedInput& rendered,
                                     const lexicon::SynsetLexicon& lexicon,
                                     const lexicon::LexiconConfig& config);

// The perturbed example inside a rendered (possibly edited) input.
std::string ExampleRegion(const RenderedInput& original,
                          std::string_view rendered_text);

// Searches one example. Never throws for record-level problems; they come
// back as status "error".
ResultRecord SearchExample(const DatasetRecord& record,
                           const CampaignConfig& config,
                           const CampaignResources& resources,
                           const threat::Classifier& classifier,
                           std::size_t repeat);

// Indices into `dataset` for one repeat, sorted by id.
std::vector<std::size_t> SampleIndices(std::span<const DatasetRecord> dataset,
                                       std::size_t sample_size,
                                       std::uint64_t seed, std::size_t repeat);

// FNV-1a over the sampled ids, as 16 hex digits.
std::string SampleHash(std::span<const DatasetRecord> dataset,
                       std::span<const std::size_t> indices);

struct CampaignReport {
  std::string strategy;
  std::string provider;
  std::vector<std::string> sample_hashes;  // one per repeat
  std::vector<metrics::CampaignStats> repeats;
  metrics::CampaignStats mean;
  std::size_t backend_calls = 0;
  std::vector<ResultRecord> results;  // in output order

  nlohmann::json ToJson(const CampaignConfig& config) const;
};

// Runs the campaign with already-loaded resources. Writes the output files
// when config.out is non-empty.
CampaignReport RunCampaign(const CampaignConfig& config,
                           const CampaignResources& resources);

// LoadResources followed by RunCampaign.
CampaignReport RunCampaign(const CampaignConfig& config);

struct AblationRow {
  std::string name;
  search::Strategy strategy;
  lexicon::Provider provider;
  CampaignReport report;
};

// One campaign per (strategy, provider) pair over the same samples. Each
// writes into out/<name>; the table goes to out/ablation.json and
// out/ablation.csv. Throws ConfigError for fewer than two rows.
std::vector<AblationRow> CompareStrategies(
    const CampaignConfig& config, const CampaignResources& resources,
    std::span<const search::Strategy> strategies,
    std::span<const lexicon::Provider> providers);

std::string RenderAblationTable(std::span<const AblationRow> rows);

struct TransferResult {
  std::size_t cases = 0;
  std::optional<double> rate;
};

// Re-classifies the final text of every successful record with `other`.
TransferResult TransferFromResults(std::span<const ResultRecord> records,
                                   const threat::Classifier& other);

}  // namespace abfs::harness

#endif  // ABFS_HARNESS_CAMPAIGN_HPP_
