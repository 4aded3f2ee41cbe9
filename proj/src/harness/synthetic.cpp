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

#include "abfs/harness/synthetic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

#include <fmt/format.h>

#include "abfs/common/rng.hpp"
#include "abfs/errors.hpp"
#include "abfs/lexicon/stopwords.hpp"

namespace abfs::harness {

namespace {

constexpr std::string_view kConsonants = "bdfgklmnprstvz";
constexpr std::string_view kVowels = "aeiou";
constexpr std::array<const char*, 14> kFunctionWords = {
    "the", "a", "of", "and", "in", "to", "with",
    "for", "on", "was", "is", "by", "at", "from"};

class WordMaker {
 public:
  explicit WordMaker(Rng& rng) : rng_(rng) {}

  std::string Next() {
    const auto stop = lexicon::StopWordSet::English();
    while (true) {
      std::string w;
      const std::size_t syllables = 2 + rng_.Below(2);
      for (std::size_t s = 0; s < syllables; ++s) {
        w.push_back(kConsonants[rng_.Below(kConsonants.size())]);
        w.push_back(kVowels[rng_.Below(kVowels.size())]);
      }
      w.push_back(kConsonants[rng_.Below(kConsonants.size())]);
      if (!stop.Contains(w) && used_.insert(w).second) return w;
    }
  }

 private:
  Rng& rng_;
  std::set<std::string> used_;
};

double Gaussian(Rng& rng) {
  // Box-Muller; keeps the stream identical across standard libraries.
  const double u1 = 1.0 - rng.Unit();
  const double u2 = rng.Unit();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

std::vector<float> Jitter(const std::vector<double>& centre, double scale,
                          Rng& rng) {
  std::vector<float> v(centre.size());
  for (std::size_t i = 0; i < centre.size(); ++i) {
    v[i] = static_cast<float>(centre[i] + scale * Gaussian(rng));
  }
  return v;
}

struct TopicSynset {
  std::string label;
  std::string head;
};

}  // namespace

SyntheticBenchmark GenerateSynthetic(const SyntheticOptions& options) {
  if (options.labels.size() < 2) {
    throw ConfigError("the synthetic benchmark needs at least two labels");
  }
  if (options.topic_synsets_per_label == 0 || options.filler_synsets == 0 ||
      options.min_words < 4 || options.max_words < options.min_words ||
      options.embedding_dim == 0) {
    throw ConfigError("invalid synthetic benchmark options");
  }
  Rng rng(options.seed);
  WordMaker words(rng);
  SyntheticBenchmark bench;
  bench.embeddings = lexicon::EmbeddingTable(options.embedding_dim);
  bench.surrogate.label_set = options.labels;
  bench.surrogate.temperature = 1.0;
  for (const auto& l : options.labels) bench.surrogate.bias[l] = 0.0;

  auto add_synset = [&](std::vector<std::string> lemmas,
                        const std::vector<double>& scales) {
    std::vector<double> centre(options.embedding_dim);
    for (double& c : centre) c = Gaussian(rng);
    for (std::size_t i = 0; i < lemmas.size(); ++i) {
      bench.embeddings.Add(lemmas[i], Jitter(centre, scales[i], rng));
    }
    bench.lexicon.AddSynset(lexicon::Pos::kNoun, lemmas);
    bench.noun_synsets.push_back(std::move(lemmas));
  };

  // Labels come in confusable pairs; focused synonyms push the partner.
  std::map<std::string, std::string> rival;
  for (std::size_t i = 0; i < options.labels.size(); ++i) {
    std::size_t j = i ^ 1;
    if (j >= options.labels.size()) j = (i + 1) % options.labels.size();
    rival[options.labels[i]] = options.labels[j];
  }

  std::map<std::string, std::vector<std::string>> topic_heads;
  for (const std::string& label : options.labels) {
    for (std::size_t s = 0; s < options.topic_synsets_per_label; ++s) {
      const double w = 0.9 + 0.4 * rng.Unit();
      const std::string& target = rival.at(label);

      const std::string head = words.Next();
      const std::string focused1 = words.Next();
      const std::string focused2 = words.Next();
      const std::string spreader = words.Next();
      const std::string weak = words.Next();
      auto& wt = bench.surrogate.weights;
      wt[head][label] = w;
      wt[focused1][target] = 0.45 + 0.3 * rng.Unit();
      wt[focused2][target] = 0.45 + 0.3 * rng.Unit();
      const double u = 0.3 + 0.2 * rng.Unit();
      for (const auto& other : options.labels) {
        if (other != label) wt[spreader][other] = u;
      }
      wt[weak][label] = 0.5 * w;
      add_synset({head, focused1, focused2, spreader, weak},
                 {0.1, 0.25, 0.3, 0.5, 0.8});
      topic_heads[label].push_back(head);
    }
  }

  std::vector<std::string> fillers;
  for (std::size_t s = 0; s < options.filler_synsets; ++s) {
    std::vector<std::string> lemmas;
    for (int i = 0; i < 4; ++i) lemmas.push_back(words.Next());
    fillers.push_back(lemmas.front());
    add_synset(std::move(lemmas), {0.1, 0.3, 0.4, 0.5});
  }

  for (std::size_t e = 0; e < options.examples; ++e) {
    const std::string& y = options.labels[rng.Below(options.labels.size())];
    const std::size_t length =
        options.min_words + rng.Below(options.max_words - options.min_words + 1);
    const std::size_t topical = 1 + length / 20 + rng.Below(2);
    const std::size_t noise = rng.Below(3);

    std::vector<std::string> sentence;
    const auto& own = topic_heads[y];
    for (std::size_t i = 0; i < topical; ++i) {
      sentence.push_back(own[rng.Below(own.size())]);
    }
    for (std::size_t i = 0; i < noise; ++i) {
      std::string other;
      do {
        other = options.labels[rng.Below(options.labels.size())];
      } while (other == y);
      const auto& heads = topic_heads[other];
      sentence.push_back(heads[rng.Below(heads.size())]);
    }
    while (sentence.size() < length) {
      if (rng.Unit() < 0.35) {
        sentence.push_back(kFunctionWords[rng.Below(kFunctionWords.size())]);
      } else {
        sentence.push_back(fillers[rng.Below(fillers.size())]);
      }
    }
    rng.Shuffle(sentence);

    std::string text;
    for (std::size_t i = 0; i < sentence.size(); ++i) {
      if (i > 0) text += (i == sentence.size() / 2) ? ", " : " ";
      text += sentence[i];
    }
    text[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
    text += '.';
    bench.dataset.push_back({fmt::format("{:06d}", e + 1), text, y});
  }
  bench.surrogate.Validate();
  return bench;
}

WordNetFiles FormatNounFiles(
    const std::vector<std::vector<std::string>>& synsets) {
  WordNetFiles out;
  std::map<std::string, std::vector<std::size_t>> senses;
  for (const auto& lemmas : synsets) {
    const std::size_t offset = out.data.size();
    std::string line = fmt::format("{:08d} 03 n {:02x}", offset, lemmas.size());
    for (const auto& l : lemmas) line += fmt::format(" {} 0", l);
    line += " 000 | synthetic synset\n";
    out.data += line;
    for (const auto& l : lemmas) senses[l].push_back(offset);
  }
  for (const auto& [lemma, offsets] : senses) {
    out.index += fmt::format("{} n {} 0 {} 0", lemma, offsets.size(),
                             offsets.size());
    for (std::size_t off : offsets) out.index += fmt::format(" {:08d}", off);
    out.index += "  \n";
  }
  return out;
}

void WriteSynthetic(const SyntheticBenchmark& bench,
                    const std::filesystem::path& dir) {
  const auto wn = dir / "wordnet";
  std::error_code ec;
  std::filesystem::create_directories(wn, ec);
  if (ec) throw ResourceError("cannot create " + wn.string());

  auto write = [](const std::filesystem::path& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << body;
    if (!out) throw ResourceError("cannot write " + path.string());
  };
  const WordNetFiles nouns = FormatNounFiles(bench.noun_synsets);
  write(wn / "data.noun", nouns.data);
  write(wn / "index.noun", nouns.index);
  for (const char* pos : {"verb", "adj", "adv"}) {
    write(wn / (std::string("data.") + pos), "");
    write(wn / (std::string("index.") + pos), "");
  }

  std::string emb;
  for (const auto& word : bench.embeddings.words()) {
    emb += word;
    const std::span<const float> values = *bench.embeddings.Find(word);
    for (float v : values) emb += fmt::format(" {}", v);
    emb += '\n';
  }
  write(dir / "embeddings.txt", emb);
  SaveJsonl(bench.dataset, dir / "dataset.jsonl");
  threat::SaveSurrogateSpec(bench.surrogate, dir / "surrogate.json");
}

}  // namespace abfs::harness
