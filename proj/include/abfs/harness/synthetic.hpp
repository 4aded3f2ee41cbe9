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

// Seeded synthetic benchmark: a topic-classification corpus over invented
// words, a bag-of-words surrogate that classifies it, and the WordNet-format
// lexicon and embeddings that provide substitutions for it.
//
// Every topic word has a synset of invented synonyms of three kinds:
//   focused   drops the topic weight and pushes the confusable label
//   spreader  drops the topic weight and pushes every other label a little
//   weak      keeps part of the topic weight
// Spreaders lower the ground-truth confidence the most but rarely change the
// argmax, so they act as local optima for a search that only follows the
// steepest descent. Filler words have neutral synonyms.

#ifndef ABFS_HARNESS_SYNTHETIC_HPP_
#define ABFS_HARNESS_SYNTHETIC_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "abfs/harness/dataset.hpp"
#include "abfs/lexicon/embeddings.hpp"
#include "abfs/lexicon/wordnet.hpp"
#include "abfs/threat/surrogate.hpp"

namespace abfs::harness {

struct SyntheticOptions {
  std::uint64_t seed = 7;
  std::size_t examples = 200;
  std::vector<std::string> labels = {"business", "science", "sports", "world"};
  std::size_t topic_synsets_per_label = 16;
  std::size_t filler_synsets = 48;
  std::size_t min_words = 24;
  std::size_t max_words = 44;
  std::size_t embedding_dim = 16;
};

struct SyntheticBenchmark {
  threat::SurrogateSpec surrogate;
  lexicon::SynsetLexicon lexicon;
  lexicon::EmbeddingTable embeddings{1};
  std::vector<DatasetRecord> dataset;
  std::vector<std::vector<std::string>> noun_synsets;  // head word first
};

SyntheticBenchmark GenerateSynthetic(const SyntheticOptions& options = {});

// Writes dir/wordnet/{index,data}.{noun,verb,adj,adv}, dir/embeddings.txt,
// dir/dataset.jsonl and dir/surrogate.json.
void WriteSynthetic(const SyntheticBenchmark& bench,
                    const std::filesystem::path& dir);

// data.noun and index.noun contents in WordNet 3.x layout, with true byte
// offsets.
struct WordNetFiles {
  std::string data;
  std::string index;
};
WordNetFiles FormatNounFiles(
    const std::vector<std::vector<std::string>>& synsets);

}  // namespace abfs::harness

#endif  // ABFS_HARNESS_SYNTHETIC_HPP_
