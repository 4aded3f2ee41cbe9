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

#include "abfs/harness/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <chrono>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include <fmt/format.h>

#include "abfs/common/rng.hpp"
#include "abfs/errors.hpp"
#include "abfs/lexicon/pos_tagger.hpp"
#include "abfs/threat/http_classifier.hpp"
#include "abfs/threat/query_ledger.hpp"
#include "abfs/threat/surrogate.hpp"

namespace abfs::harness {

using nlohmann::json;

namespace {

json VerdictJson(const threat::ThreatVerdict& v) {
  return json{{"label", v.label}, {"confidence", v.confidence}};
}

threat::ThreatVerdict VerdictFrom(const json& j) {
  threat::ThreatVerdict v;
  v.label = j.at("label").get<std::string>();
  v.confidence = j.at("confidence").get<threat::ConfidenceMap>();
  return v;
}

json OptionalNumber(const std::optional<double>& v) {
  if (!v || !std::isfinite(*v)) return nullptr;
  return *v;
}

// PPL may legitimately be infinite; JSON has no infinity, so it is spelled.
json PplJson(const std::optional<double>& v) {
  if (v && std::isinf(*v)) return "inf";
  return OptionalNumber(v);
}

std::optional<double> PplFrom(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  if (j.at(key).is_string()) return metrics::kInfinitePerplexity;
  return j.at(key).get<double>();
}

std::size_t WorkerCount(std::size_t requested) {
  if (requested > 0) return requested;
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

metrics::OutcomeSummary Summarize(const ResultRecord& r) {
  metrics::OutcomeSummary s;
  s.success = r.success();
  s.skipped = r.status == "skipped";
  s.change_rate = r.change_rate;
  s.ppl = r.ppl_final;
  s.wall_seconds = r.wall_time;
  s.queries = r.queries_used;
  return s;
}

metrics::CampaignStats StatsOf(std::span<const ResultRecord> records) {
  std::vector<metrics::OutcomeSummary> summaries;
  summaries.reserve(records.size());
  std::size_t errors = 0;
  for (const auto& r : records) {
    summaries.push_back(Summarize(r));
    if (r.status == "error") ++errors;
  }
  metrics::CampaignStats stats = metrics::Aggregate(summaries);
  stats.errors = errors;
  return stats;
}

class OutputFiles {
 public:
  explicit OutputFiles(const std::filesystem::path& dir) {
    if (dir.empty()) return;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    results_.open(dir / "results.jsonl", std::ios::binary | std::ios::trunc);
    timings_.open(dir / "timings.jsonl", std::ios::binary | std::ios::trunc);
    if (!results_ || !timings_) {
      throw ResourceError("cannot write into " + dir.string());
    }
    enabled_ = true;
  }

  void Write(const ResultRecord& r) {
    if (!enabled_) return;
    results_ << json(r).dump() << '\n';
    timings_ << json{{"id", r.id}, {"repeat", r.repeat}, {"wall_time", r.wall_time}}
                    .dump()
             << '\n';
    results_.flush();
    timings_.flush();
  }

 private:
  bool enabled_ = false;
  std::ofstream results_;
  std::ofstream timings_;
};

// Runs fn(i) for i in [0, n) on `workers` threads and hands each result to
// `emit` in index order as soon as every earlier index is done.
template <typename Fn, typename Emit>
void OrderedParallelFor(std::size_t n, std::size_t workers, Fn fn, Emit emit) {
  std::vector<std::optional<ResultRecord>> slots(n);
  std::mutex mu;
  std::size_t next_emit = 0;
  std::atomic<std::size_t> next_task{0};
  std::exception_ptr failure;

  auto work = [&] {
    while (true) {
      const std::size_t i = next_task.fetch_add(1);
      if (i >= n) return;
      try {
        ResultRecord r = fn(i);
        std::lock_guard<std::mutex> lock(mu);
        slots[i] = std::move(r);
        while (next_emit < n && slots[next_emit]) {
          emit(std::move(*slots[next_emit]));
          slots[next_emit].reset();
          ++next_emit;
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!failure) failure = std::current_exception();
        next_task.store(n);
        return;
      }
    }
  };

  const std::size_t threads = std::min(workers, std::max<std::size_t>(n, 1));
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
}

std::string Hex16(std::uint64_t v) { return fmt::format("{:016x}", v); }

}  // namespace

ThreatSpec ThreatSpec::Parse(std::string_view text) {
  ThreatSpec spec;
  if (text.starts_with("http://") || text.starts_with("https://")) {
    spec.kind = Kind::kHttp;
    spec.target = std::string(text);
    return spec;
  }
  const std::size_t colon = text.find(':');
  if (colon == std::string_view::npos || colon + 1 == text.size()) {
    throw ConfigError("threat must be surrogate:PATH or http:URL, got '" +
                      std::string(text) + "'");
  }
  const std::string_view kind = text.substr(0, colon);
  spec.target = std::string(text.substr(colon + 1));
  if (kind == "surrogate") {
    spec.kind = Kind::kSurrogate;
  } else if (kind == "http" || kind == "https") {
    spec.kind = Kind::kHttp;
    if (!spec.target.starts_with("http")) {
      spec.target = std::string(kind) + ":" + spec.target;
    }
  } else {
    throw ConfigError("unknown threat adapter '" + std::string(kind) + "'");
  }
  return spec;
}

threat::ClassifierPtr MakeClassifier(const ThreatSpec& spec,
                                     const std::vector<std::string>& labels) {
  if (spec.kind == ThreatSpec::Kind::kSurrogate) {
    auto model = std::make_shared<threat::SurrogateClassifier>(
        threat::LoadSurrogateSpec(spec.target));
    if (!labels.empty()) {
      std::vector<std::string> a = labels, b = model->labels();
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      if (a != b) {
        throw ConfigError("--labels does not match the surrogate label set");
      }
    }
    return model;
  }
  if (labels.empty()) throw ConfigError("an HTTP threat model needs --labels");
  threat::PromptProtocol protocol;
  protocol.endpoint = spec.target;
  protocol.Validate();
  return std::make_shared<threat::HttpClassifier>(protocol, labels);
}

void CampaignConfig::Validate() const {
  search.Validate();
  if (lexicon.k1 == 0) throw ConfigError("k1 must be at least 1");
  if (repeat == 0) throw ConfigError("repeat must be at least 1");
  if (prompt_template.find(kExamplePlaceholder) == std::string::npos) {
    throw ConfigError("prompt template lacks the {example} placeholder");
  }
  std::vector<std::string> sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ConfigError("duplicate label in --labels");
  }
}

std::shared_ptr<const metrics::PerplexityScorer> TrainPerplexityModel(
    std::span<const DatasetRecord> dataset, std::size_t order) {
  if (order == 0) return nullptr;
  std::vector<metrics::TokenSequence> corpus;
  corpus.reserve(dataset.size());
  for (const auto& r : dataset) {
    auto tokens = metrics::LmTokens(r.text);
    if (!tokens.empty()) corpus.push_back(std::move(tokens));
  }
  return std::make_shared<metrics::NGramModel>(
      metrics::NGramModel::Train(corpus, order, 1.0));
}

CampaignResources LoadResources(const CampaignConfig& config) {
  config.Validate();
  CampaignResources res;
  std::optional<DatasetFormat> format =
      config.format ? config.format : GuessDatasetFormat(config.dataset);
  if (!format) {
    throw ConfigError("cannot tell the dataset format; pass --format");
  }
  res.dataset = LoadDataset(config.dataset, *format);

  if (!config.lexicon.wordnet_dir.empty()) {
    res.lexicon = std::make_shared<lexicon::SynsetLexicon>(
        lexicon::LoadWordNet(config.lexicon.wordnet_dir));
  } else if (config.provider == lexicon::Provider::kWordNet) {
    throw ConfigError("the wordnet provider needs a WordNet directory");
  } else {
    res.lexicon = std::make_shared<lexicon::SynsetLexicon>();
  }
  if (config.lexicon.embeddings_path) {
    res.embeddings = std::make_shared<lexicon::EmbeddingTable>(
        lexicon::LoadEmbeddings(*config.lexicon.embeddings_path));
  } else if (config.provider == lexicon::Provider::kEmbedding) {
    throw ConfigError("the embedding provider needs an embeddings file");
  }

  res.classifier =
      MakeClassifier(ThreatSpec::Parse(config.threat), config.labels);

  if (config.ppl_endpoint) {
    res.ppl = std::make_shared<metrics::HttpPerplexityScorer>(
        *config.ppl_endpoint);
  } else if (config.ppl_order > 0 && !res.dataset.empty()) {
    res.ppl = TrainPerplexityModel(res.dataset, config.ppl_order);
  }
  return res;
}

void to_json(json& j, const ResultRecord& r) {
  json edits = json::array();
  for (const auto& e : r.edits) {
    edits.push_back({{"position", e.position},
                     {"original", e.original},
                     {"replacement", e.replacement}});
  }
  j = json{{"id", r.id},
           {"repeat", r.repeat},
           {"strategy", r.strategy},
           {"provider", r.provider},
           {"status", r.status},
           {"ground_truth", r.ground_truth},
           {"original_text", r.original_text},
           {"final_text", r.final_text},
           {"edits", std::move(edits)},
           {"original_verdict", r.original_verdict
                                    ? VerdictJson(*r.original_verdict)
                                    : json(nullptr)},
           {"final_verdict",
            r.final_verdict ? VerdictJson(*r.final_verdict) : json(nullptr)},
           {"queries_used", r.queries_used},
           {"iterations", r.iterations},
           {"token_count", r.token_count},
           {"change_rate", r.change_rate},
           {"ppl_original", PplJson(r.ppl_original)},
           {"ppl_final", PplJson(r.ppl_final)}};
  if (!r.error.empty()) j["error"] = r.error;
}

void from_json(const json& j, ResultRecord& r) {
  r.id = j.at("id").get<std::string>();
  r.repeat = j.value("repeat", std::size_t{0});
  r.strategy = j.value("strategy", "");
  r.provider = j.value("provider", "");
  r.status = j.at("status").get<std::string>();
  r.error = j.value("error", "");
  r.ground_truth = j.at("ground_truth").get<std::string>();
  r.original_text = j.at("original_text").get<std::string>();
  r.final_text = j.at("final_text").get<std::string>();
  r.edits.clear();
  for (const auto& e : j.at("edits")) {
    r.edits.push_back({e.at("position").get<std::size_t>(),
                       e.at("original").get<std::string>(),
                       e.at("replacement").get<std::string>()});
  }
  if (j.contains("original_verdict") && !j["original_verdict"].is_null()) {
    r.original_verdict = VerdictFrom(j["original_verdict"]);
  }
  if (j.contains("final_verdict") && !j["final_verdict"].is_null()) {
    r.final_verdict = VerdictFrom(j["final_verdict"]);
  }
  r.queries_used = j.value("queries_used", std::size_t{0});
  r.iterations = j.value("iterations", std::size_t{0});
  r.token_count = j.value("token_count", std::size_t{0});
  r.change_rate = j.value("change_rate", 0.0);
  r.ppl_original = PplFrom(j, "ppl_original");
  r.ppl_final = PplFrom(j, "ppl_final");
}

std::vector<ResultRecord> ReadResults(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ResourceError("cannot open " + path.string());
  std::vector<ResultRecord> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto j = json::parse(line, nullptr, false);
    if (j.is_discarded()) {
      throw ResourceError(fmt::format("{}:{}: malformed result line",
                                      path.string(), n));
    }
    try {
      out.push_back(j.get<ResultRecord>());
    } catch (const json::exception& e) {
      throw ResourceError(
          fmt::format("{}:{}: {}", path.string(), n, e.what()));
    }
  }
  return out;
}

lexicon::TokenizedInput PrepareInput(const RenderedInput& rendered,
                                     const lexicon::SynsetLexicon& lexicon,
                                     const lexicon::LexiconConfig& config) {
  lexicon::TokenizedInput input =
      lexicon::Tokenize(rendered.text, rendered.example_begin);
  lexicon::Annotate(input, lexicon, config.stopwords, config.freeze_prompt);
  if (config.freeze_prompt) {
    for (auto& tok : input.tokens) {
      if (tok.begin >= rendered.example_end) tok.is_frozen = true;
    }
  }
  return input;
}

std::string ExampleRegion(const RenderedInput& original,
                          std::string_view rendered_text) {
  const std::size_t suffix = original.text.size() - original.example_end;
  if (rendered_text.size() < original.example_begin + suffix) {
    return std::string(rendered_text);
  }
  return std::string(rendered_text.substr(
      original.example_begin,
      rendered_text.size() - original.example_begin - suffix));
}

ResultRecord SearchExample(const DatasetRecord& record,
                           const CampaignConfig& config,
                           const CampaignResources& resources,
                           const threat::Classifier& classifier,
                           std::size_t repeat) {
  ResultRecord r;
  r.id = record.id;
  r.repeat = repeat;
  r.strategy = std::string(search::ToString(config.search.strategy));
  r.provider = std::string(lexicon::ToString(config.provider));
  r.ground_truth = record.label;
  try {
    const RenderedInput rendered =
        RenderInput(config.prompt_template, record.text);
    r.original_text = rendered.text;
    r.final_text = rendered.text;
    const auto& labels = classifier.labels();
    if (std::find(labels.begin(), labels.end(), record.label) ==
        labels.end()) {
      throw ConfigError("label '" + record.label +
                        "' is not in the threat model's label set");
    }
    const lexicon::TokenizedInput input =
        PrepareInput(rendered, *resources.lexicon, config.lexicon);
    r.token_count = input.size();
    const lexicon::TransformSpace space = lexicon::BuildTransformSpace(
        input, *resources.lexicon, resources.embeddings.get(), config.lexicon,
        config.provider, MixSeed(config.search.seed, Fnv1a64(record.id)));

    threat::QueryLedger ledger(classifier, config.search.max_query);
    const search::SearchOutcome outcome =
        search::RunSearch(input, space, ledger, record.label, config.search);

    r.status = std::string(search::ToString(outcome.status));
    r.final_text = outcome.best_case.text;
    r.edits = outcome.best_case.edits;
    r.original_verdict = outcome.original_verdict;
    r.final_verdict = outcome.final_verdict;
    r.queries_used = outcome.queries_used;
    r.iterations = outcome.iterations;
    r.wall_time = outcome.wall_time.count();
    r.change_rate = metrics::ChangeRate(r.edits.size(), input.size());
    if (resources.ppl) {
      r.ppl_original =
          resources.ppl->Perplexity(ExampleRegion(rendered, r.original_text));
      r.ppl_final =
          resources.ppl->Perplexity(ExampleRegion(rendered, r.final_text));
    }
  } catch (const std::exception& e) {
    r.status = "error";
    r.error = e.what();
  }
  return r;
}

std::vector<std::size_t> SampleIndices(std::span<const DatasetRecord> dataset,
                                       std::size_t sample_size,
                                       std::uint64_t seed, std::size_t repeat) {
  if (sample_size > dataset.size()) {
    throw ConfigError(fmt::format("sample size {} exceeds the {} records",
                                  sample_size, dataset.size()));
  }
  std::vector<std::size_t> idx(dataset.size());
  std::iota(idx.begin(), idx.end(), 0);
  Rng rng(MixSeed(seed, repeat));
  rng.Shuffle(idx);
  idx.resize(sample_size);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return dataset[a].id < dataset[b].id;
  });
  return idx;
}

std::string SampleHash(std::span<const DatasetRecord> dataset,
                       std::span<const std::size_t> indices) {
  std::string joined;
  for (std::size_t i : indices) {
    joined += dataset[i].id;
    joined.push_back('\n');
  }
  return Hex16(Fnv1a64(joined));
}

json CampaignReport::ToJson(const CampaignConfig& config) const {
  return json{{"strategy", strategy},
              {"provider", provider},
              {"labels", config.labels},
              {"prompt_template", config.prompt_template},
              {"seed", config.search.seed},
              {"sample_size", config.sample_size},
              {"repeat", config.repeat},
              {"max_queries", config.search.max_query},
              {"rho_max", config.search.rho_max},
              {"k1", config.lexicon.k1},
              {"k2", config.search.k2},
              {"sample_hashes", sample_hashes},
              {"repeats", repeats},
              {"mean", mean},
              {"backend_calls", backend_calls}};
}

CampaignReport RunCampaign(const CampaignConfig& config,
                           const CampaignResources& resources) {
  config.Validate();
  if (!resources.classifier || !resources.lexicon) {
    throw ConfigError("campaign resources are incomplete");
  }
  CampaignReport report;
  report.strategy = std::string(search::ToString(config.search.strategy));
  report.provider = std::string(lexicon::ToString(config.provider));

  auto memo = std::make_shared<threat::MemoizingClassifier>(resources.classifier);
  OutputFiles files(config.out);
  const std::size_t workers = WorkerCount(config.workers);

  for (std::size_t rep = 0; rep < config.repeat; ++rep) {
    const std::vector<std::size_t> sample = SampleIndices(
        resources.dataset, config.sample_size, config.search.seed, rep);
    report.sample_hashes.push_back(SampleHash(resources.dataset, sample));

    const std::size_t first = report.results.size();
    OrderedParallelFor(
        sample.size(), workers,
        [&](std::size_t i) {
          return SearchExample(resources.dataset[sample[i]], config, resources,
                               *memo, rep);
        },
        [&](ResultRecord r) {
          files.Write(r);
          report.results.push_back(std::move(r));
        });
    report.repeats.push_back(StatsOf(
        std::span<const ResultRecord>(report.results).subspan(first)));
  }
  report.mean = metrics::MeanOfRepeats(report.repeats);
  report.backend_calls = memo->backend_calls();

  if (!config.out.empty()) {
    std::ofstream out(config.out / "report.json", std::ios::binary);
    if (!out) throw ResourceError("cannot write report.json");
    out << report.ToJson(config).dump(2) << '\n';
  }
  return report;
}

CampaignReport RunCampaign(const CampaignConfig& config) {
  return RunCampaign(config, LoadResources(config));
}

std::vector<AblationRow> CompareStrategies(
    const CampaignConfig& config, const CampaignResources& resources,
    std::span<const search::Strategy> strategies,
    std::span<const lexicon::Provider> providers) {
  std::vector<search::Strategy> ss(strategies.begin(), strategies.end());
  std::vector<lexicon::Provider> ps(providers.begin(), providers.end());
  if (ss.empty()) ss.push_back(config.search.strategy);
  if (ps.empty()) ps.push_back(config.provider);
  if (ss.size() * ps.size() < 2) {
    throw ConfigError("an ablation needs at least two strategies or providers");
  }

  // One memo for every row: identical texts are never sent twice.
  CampaignResources shared = resources;
  shared.classifier =
      std::make_shared<threat::MemoizingClassifier>(resources.classifier);

  std::vector<AblationRow> rows;
  for (lexicon::Provider p : ps) {
    for (search::Strategy s : ss) {
      CampaignConfig cfg = config;
      cfg.search.strategy = s;
      cfg.provider = p;
      AblationRow row;
      row.strategy = s;
      row.provider = p;
      row.name = fmt::format("{}-{}", search::ToString(s), lexicon::ToString(p));
      if (!config.out.empty()) cfg.out = config.out / row.name;
      row.report = RunCampaign(cfg, shared);
      rows.push_back(std::move(row));
    }
  }

  if (!config.out.empty()) {
    json table = json::array();
    std::ofstream csv(config.out / "ablation.csv", std::ios::binary);
    csv << "name,strategy,provider,n,n_suc,skipped,errors,s_rate,"
           "s_rate_conditional,c_rate,ppl,t_o,q_n,sample_hash\n";
    auto cell = [](const std::optional<double>& v) {
      return v ? fmt::format("{:.6f}", *v) : std::string();
    };
    for (const auto& row : rows) {
      const auto& m = row.report.mean;
      table.push_back({{"name", row.name},
                       {"strategy", search::ToString(row.strategy)},
                       {"provider", lexicon::ToString(row.provider)},
                       {"sample_hashes", row.report.sample_hashes},
                       {"stats", m}});
      csv << fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
                         row.name, search::ToString(row.strategy),
                         lexicon::ToString(row.provider), m.n, m.n_suc,
                         m.skipped, m.errors, cell(m.s_rate),
                         cell(m.s_rate_conditional), cell(m.c_rate),
                         cell(m.ppl), cell(m.t_o), cell(m.q_n),
                         row.report.sample_hashes.empty()
                             ? ""
                             : row.report.sample_hashes.front());
    }
    std::ofstream out(config.out / "ablation.json", std::ios::binary);
    out << table.dump(2) << '\n';
    if (!out || !csv) throw ResourceError("cannot write the ablation table");
  }
  return rows;
}

std::string RenderAblationTable(std::span<const AblationRow> rows) {
  std::ostringstream out;
  out << fmt::format("{:<24} {:>9} {:>9} {:>9} {:>9} {:>9} {:>10}\n", "variant",
                     "S-rate", "S-cond", "C-rate", "PPL", "T-O(s)", "Q-N");
  for (const auto& row : rows) {
    const auto& m = row.report.mean;
    out << fmt::format("{:<24} {:>9} {:>9} {:>9} {:>9} {:>9} {:>10}\n",
                       row.name, metrics::FormatMetric(m.s_rate),
                       metrics::FormatMetric(m.s_rate_conditional),
                       metrics::FormatMetric(m.c_rate),
                       metrics::FormatMetric(m.ppl),
                       metrics::FormatMetric(m.t_o),
                       metrics::FormatMetric(m.q_n));
  }
  return out.str();
}

TransferResult TransferFromResults(std::span<const ResultRecord> records,
                                   const threat::Classifier& other) {
  std::vector<metrics::TransferCase> cases;
  for (const auto& r : records) {
    if (r.success()) cases.push_back({r.final_text, r.ground_truth});
  }
  return {cases.size(), metrics::TransferEvaluate(cases, other)};
}

}  // namespace abfs::harness
