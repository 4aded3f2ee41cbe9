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

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "abfs/common/rng.hpp"
#include "abfs/errors.hpp"
#include "abfs/lexicon/embeddings.hpp"
#include "abfs/lexicon/pos_tagger.hpp"
#include "abfs/lexicon/stopwords.hpp"
#include "abfs/lexicon/tokenizer.hpp"
#include "abfs/lexicon/transform_space.hpp"
#include "abfs/lexicon/wordnet.hpp"
#include "test_support.hpp"

namespace abfs::lexicon {
namespace {

using abfs::testing::TempDir;
using abfs::testing::WriteFile;

std::vector<std::string> Surfaces(const TokenizedInput& in) {
  std::vector<std::string> out;
  for (const auto& t : in.tokens) out.push_back(t.surface);
  return out;
}

// Rebuilds the text by pasting each token back at its span, filling the gaps
// from the source. Independent of TokenizedInput::Detokenize.
std::string Reinsert(const TokenizedInput& in) {
  std::string out(in.source.size(), '\0');
  std::vector<bool> covered(in.source.size(), false);
  for (const auto& t : in.tokens) {
    out.replace(t.begin, t.surface.size(), t.surface);
    for (std::size_t i = t.begin; i < t.end; ++i) covered[i] = true;
  }
  for (std::size_t i = 0; i < in.source.size(); ++i) {
    if (!covered[i]) out[i] = in.source[i];
  }
  return out;
}

TEST(Tokenizer, WordsAndPunctuation) {
  const auto in = Tokenize("Good movie!");
  EXPECT_EQ(Surfaces(in), (std::vector<std::string>{"Good", "movie", "!"}));
  ASSERT_EQ(in.size(), 3u);
  EXPECT_EQ(in.tokens[0].begin, 0u);
  EXPECT_EQ(in.tokens[0].end, 4u);
  EXPECT_EQ(in.tokens[1].begin, 5u);
  EXPECT_EQ(in.tokens[1].end, 10u);
  EXPECT_EQ(in.tokens[2].begin, 10u);
  EXPECT_EQ(in.tokens[2].end, 11u);
  EXPECT_TRUE(in.tokens[2].is_punct);
  EXPECT_TRUE(in.tokens[2].is_stopword);
  EXPECT_EQ(in.tokens[2].pos, Pos::kOther);
}

TEST(Tokenizer, EmptyInputThrows) { EXPECT_THROW(Tokenize(""), EmptyInput); }

TEST(Tokenizer, HyphensSplit) {
  const auto in = Tokenize("state-of-the-art");
  EXPECT_EQ(Surfaces(in), (std::vector<std::string>{"state", "-", "of", "-",
                                                    "the", "-", "art"}));
  EXPECT_EQ(Reinsert(in), "state-of-the-art");
  EXPECT_EQ(in.Detokenize(), "state-of-the-art");
}

TEST(Tokenizer, ApostropheInsideWord) {
  EXPECT_EQ(Surfaces(Tokenize("don't 'go'")),
            (std::vector<std::string>{"don't", "'", "go", "'"}));
}

TEST(Tokenizer, PromptBytesCountPromptTokens) {
  const auto in = Tokenize("Classify: hi there", 10);
  EXPECT_EQ(in.prompt_len, 2u);
  EXPECT_LE(in.prompt_len, in.size());
}

TEST(Tokenizer, RoundTripProperty) {
  const std::vector<std::string> pieces = {
      "a", "Z", "7", "_", " ", "  ", "\t", "\n", ",", ".", "!", "-", "'",
      "\"", "(", "é", "日本", "ß", "word", "x'y", "\xF0\x9F\x98\x80"};
  Rng rng(1234);
  for (int trial = 0; trial < 2000; ++trial) {
    std::string text;
    const std::size_t n = 1 + rng.Below(20);
    for (std::size_t i = 0; i < n; ++i) text += pieces[rng.Below(pieces.size())];
    const auto in = Tokenize(text);
    ASSERT_EQ(in.Detokenize(), text);
    ASSERT_EQ(Reinsert(in), text);
    ASSERT_LE(in.prompt_len, in.size());
    for (std::size_t i = 0; i < in.size(); ++i) {
      const auto& t = in.tokens[i];
      ASSERT_LT(t.begin, t.end);
      ASSERT_EQ(text.substr(t.begin, t.end - t.begin), t.surface);
      if (i > 0) ASSERT_LE(in.tokens[i - 1].end, t.begin);
      ASSERT_EQ(t.surface.find_first_of(" \t\n"), std::string::npos);
    }
  }
}

TEST(Tokenizer, RenderAppliesSubstitutions) {
  const auto in = Tokenize("The film was good.");
  const std::vector<Substitution> subs = {{1, "film", "movie"},
                                          {3, "good", "fine"}};
  EXPECT_EQ(in.Render(subs), "The movie was fine.");
  EXPECT_EQ(in.RenderWithout(1, {}), "The was good.");
}

TEST(Cosine, ClosedForms) {
  const std::vector<double> x = {1, 0}, y = {0, 1}, a = {1, 2}, b = {2, 1};
  EXPECT_DOUBLE_EQ(Cosine(x, x), 1.0);
  EXPECT_DOUBLE_EQ(Cosine(x, y), 0.0);
  EXPECT_NEAR(Cosine(a, b), 0.8, 1e-15);
}

TEST(Cosine, ZeroVectorIsUndefined) {
  const std::vector<double> z = {0, 0}, x = {1, 0};
  EXPECT_THROW(Cosine(z, x), SimilarityUndefined);
}

TEST(Embeddings, ParsesTwoRows) {
  TempDir dir;
  WriteFile(dir / "e.txt", "cat 0.1 0.2\ndog 0.3 0.4\n");
  const auto table = LoadEmbeddings(dir / "e.txt");
  EXPECT_EQ(table.dim(), 2u);
  EXPECT_EQ(table.size(), 2u);
  ASSERT_TRUE(table.Find("dog"));
  EXPECT_FLOAT_EQ((*table.Find("dog"))[1], 0.4f);
}

TEST(Embeddings, DimensionMismatchNamesLine) {
  TempDir dir;
  WriteFile(dir / "e.txt", "cat 0.1 0.2\ndog 0.3\n");
  try {
    LoadEmbeddings(dir / "e.txt");
    FAIL() << "expected EmbeddingParseError";
  } catch (const EmbeddingParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(Embeddings, MalformedValuesAreCounted) {
  TempDir dir;
  WriteFile(dir / "e.txt", "cat 0.1 0.2\nbad x 0.2\ndog 0.3 0.4\n");
  const auto table = LoadEmbeddings(dir / "e.txt");
  EXPECT_EQ(table.size(), 2u);
  EXPECT_EQ(table.malformed_rows(), 1u);
}

TEST(Embeddings, ThousandRowFixtureMatchesIndependentParse) {
  TempDir dir;
  Rng rng(99);
  {
    std::ofstream out(dir / "e.txt");
    for (int i = 0; i < 1000; ++i) {
      out << "w" << rng.Next() % 1000000 << "_" << i;
      for (int d = 0; d < 8; ++d) out << ' ' << (rng.Unit() * 2 - 1);
      out << '\n';
    }
  }
  const auto table = LoadEmbeddings(dir / "e.txt");

  std::vector<std::string> keys;
  std::ifstream in(dir / "e.txt");
  for (std::string line; std::getline(in, line);) {
    std::istringstream row(line);
    std::string w;
    row >> w;
    keys.push_back(w);
  }
  std::sort(keys.begin(), keys.end());
  std::vector<std::string> got = table.words();
  std::sort(got.begin(), got.end());

  std::string joined_expected, joined_got;
  for (const auto& k : keys) joined_expected += k + "\n";
  for (const auto& k : got) joined_got += k + "\n";
  EXPECT_EQ(keys.size(), 1000u);
  EXPECT_EQ(table.size(), 1000u);
  EXPECT_EQ(Fnv1a64(joined_got), Fnv1a64(joined_expected));
}

TEST(Embeddings, NearestIsRankedBySimilarity) {
  EmbeddingTable t(2);
  const float a[] = {1, 0}, b[] = {0.9f, 0.1f}, c[] = {0, 1}, d[] = {-1, 0};
  t.Add("a", a);
  t.Add("b", b);
  t.Add("c", c);
  t.Add("d", d);
  const auto nn = t.Nearest("a", 2);
  ASSERT_EQ(nn.size(), 2u);
  EXPECT_EQ(nn[0].first, "b");
  EXPECT_EQ(nn[1].first, "c");
}

TEST(WordNet, MiniFixtureCountsMatchIndependentLineCount) {
  const auto dir = abfs::testing::MiniWordNetDir();
  std::size_t data_lines = 0, index_lines = 0;
  for (const char* pos : {"noun", "verb", "adj", "adv"}) {
    std::ifstream data(dir / (std::string("data.") + pos));
    for (std::string line; std::getline(data, line);) {
      if (!line.empty() && line[0] != ' ') ++data_lines;
    }
    std::ifstream index(dir / (std::string("index.") + pos));
    for (std::string line; std::getline(index, line);) {
      if (!line.empty() && line[0] != ' ') ++index_lines;
    }
  }
  const auto lex = LoadWordNet(dir);
  EXPECT_EQ(data_lines, 100u);
  EXPECT_EQ(lex.synset_count(), data_lines);
  EXPECT_EQ(lex.entry_count(), index_lines);
}

TEST(WordNet, MiniFixtureHasDryArid) {
  const auto lex = LoadWordNet(abfs::testing::MiniWordNetDir());
  const auto syn = lex.Synonyms("dry", Pos::kAdj);
  EXPECT_NE(std::find(syn.begin(), syn.end(), "arid"), syn.end());
  EXPECT_TRUE(lex.Synonyms("qwertyuiop", Pos::kNoun).empty());
  for (const auto& s : syn) {
    EXPECT_NE(s, "dry");
    EXPECT_EQ(s, ToLower(s));
  }
}

TEST(WordNet, FullDataHasDryArid) {
  if (!abfs::testing::HasFullWordNet()) GTEST_SKIP() << "WordNet not fetched";
  const auto lex = LoadWordNet(abfs::testing::FullWordNetDir());
  const auto syn = lex.Synonyms("dry", Pos::kAdj);
  EXPECT_NE(std::find(syn.begin(), syn.end(), "arid"), syn.end());
  EXPECT_EQ(lex.BaseForm("went", Pos::kVerb), "go");
}

TEST(WordNet, GarbledFileNamesFileAndLine) {
  TempDir dir;
  for (const char* pos : {"noun", "verb", "adj", "adv"}) {
    WriteFile(dir / (std::string("index.") + pos), "");
    WriteFile(dir / (std::string("data.") + pos), "");
  }
  WriteFile(dir / "data.noun", "00000000 03 n zz\n");
  try {
    LoadWordNet(dir.path());
    FAIL() << "expected LexiconParseError";
  } catch (const LexiconParseError& e) {
    EXPECT_NE(std::string(e.what()).find("data.noun"), std::string::npos);
    EXPECT_EQ(e.line(), 1u);
  }
}

TEST(WordNet, MissingFileIsAnError) {
  TempDir dir;
  EXPECT_THROW(LoadWordNet(dir.path()), LexiconParseError);
}

TEST(WordNet, SelfSynonymsRemoved) {
  SynsetLexicon lex;
  lex.AddSynset(Pos::kNoun, {"film", "movie", "picture"});
  lex.AddSynset(Pos::kNoun, {"film", "plastic_film"});
  EXPECT_EQ(lex.Synonyms("film", Pos::kNoun),
            (std::vector<std::string>{"movie", "picture", "plastic_film"}));
}

TEST(PosTagger, LexiconRulesOnFixture) {
  const auto lex = LoadWordNet(abfs::testing::MiniWordNetDir());
  auto in = Tokenize("quickly !");
  PosTagger(lex).Tag(in);
  EXPECT_EQ(in.tokens[0].pos, Pos::kAdv);
  EXPECT_EQ(in.tokens[1].pos, Pos::kOther);
}

TEST(PosTagger, NounWinsTies) {
  SynsetLexicon lex;
  lex.AddSynset(Pos::kVerb, {"rain"});
  lex.AddSynset(Pos::kNoun, {"rain"});
  auto in = Tokenize("rain");
  PosTagger(lex).Tag(in);
  EXPECT_EQ(in.tokens[0].pos, Pos::kNoun);
  EXPECT_EQ(in.tokens[0].lemma, "rain");
}

TEST(PosTagger, UnknownWordIsOther) {
  SynsetLexicon lex;
  auto in = Tokenize("blorft");
  PosTagger(lex).Tag(in);
  EXPECT_EQ(in.tokens[0].pos, Pos::kOther);
}

class TransformSpaceTest : public ::testing::Test {
 protected:
  TransformSpaceTest() : emb_(3) {
    lex_.AddSynset(Pos::kAdj, {"dry", "arid", "parched"});
    lex_.AddSynset(Pos::kNoun, {"land", "ground", "soil", "earth"});
    const float dry[] = {1, 0, 0}, arid[] = {0.6f, 0.8f, 0},
                parched[] = {0.9f, 0.1f, 0};
    emb_.Add("dry", dry);
    emb_.Add("arid", arid);
    emb_.Add("parched", parched);
  }

  TokenizedInput Prepare(const std::string& text, std::size_t prompt_bytes = 0,
                         bool freeze = true) {
    auto in = Tokenize(text, prompt_bytes);
    Annotate(in, lex_, StopWordSet::English(), freeze);
    return in;
  }

  SynsetLexicon lex_;
  EmbeddingTable emb_;
};

TEST_F(TransformSpaceTest, RanksByHandComputedCosine) {
  // cos(dry, parched) = 0.9 / sqrt(0.82) > cos(dry, arid) = 0.6.
  const std::vector<double> d = {1, 0, 0}, p = {0.9, 0.1, 0}, a = {0.6, 0.8, 0};
  ASSERT_GT(Cosine(d, p), Cosine(d, a));

  LexiconConfig cfg;
  cfg.k1 = 2;
  const auto in = Prepare("dry");
  const auto space = BuildTransformSpace(in, lex_, &emb_, cfg, Provider::kWordNet);
  EXPECT_EQ(space.per_position[0],
            (std::vector<std::string>{"parched", "arid"}));
}

TEST_F(TransformSpaceTest, UnembeddedCandidatesFollowInLexiconOrder) {
  LexiconConfig cfg;
  const auto in = Prepare("land");
  const auto space = BuildTransformSpace(in, lex_, &emb_, cfg, Provider::kWordNet);
  EXPECT_EQ(space.per_position[0],
            (std::vector<std::string>{"ground", "soil", "earth"}));
  cfg.k1 = 1;
  EXPECT_EQ(
      BuildTransformSpace(in, lex_, &emb_, cfg, Provider::kWordNet).per_position[0],
      (std::vector<std::string>{"ground"}));
}

TEST_F(TransformSpaceTest, StopWordsAndFrozenPromptAreEmpty) {
  LexiconConfig cfg;
  const auto in = Prepare("dry land: the dry land", 10);
  ASSERT_EQ(in.prompt_len, 3u);
  const auto space = BuildTransformSpace(in, lex_, &emb_, cfg, Provider::kWordNet);
  EXPECT_TRUE(space.per_position[0].empty());  // frozen "dry"
  EXPECT_TRUE(space.per_position[1].empty());  // frozen "land"
  EXPECT_TRUE(space.per_position[3].empty());  // "the"
  EXPECT_FALSE(space.per_position[4].empty());
  EXPECT_FALSE(space.per_position[5].empty());

  const auto unfrozen = Prepare("dry land: the dry land", 10, false);
  EXPECT_FALSE(BuildTransformSpace(unfrozen, lex_, &emb_, cfg, Provider::kWordNet)
                   .per_position[0]
                   .empty());
}

TEST_F(TransformSpaceTest, CapitalisationFollowsOriginal) {
  LexiconConfig cfg;
  const auto in = Prepare("Dry");
  EXPECT_EQ(BuildTransformSpace(in, lex_, &emb_, cfg, Provider::kWordNet)
                .per_position[0]
                .front(),
            "Parched");
}

TEST_F(TransformSpaceTest, InvariantsHoldForEveryProvider) {
  Rng rng(5);
  const std::vector<std::string> words = {"dry", "land", "arid", "the",
                                          "soil", "a", "ground", ",", "earth"};
  for (int trial = 0; trial < 200; ++trial) {
    std::string text;
    const std::size_t n = 1 + rng.Below(12);
    for (std::size_t i = 0; i < n; ++i) {
      if (i) text += ' ';
      text += words[rng.Below(words.size())];
    }
    const auto in = Prepare(text, rng.Below(text.size()));
    for (Provider p : {Provider::kWordNet, Provider::kEmbedding,
                       Provider::kRandomWord, Provider::kRandomChar}) {
      LexiconConfig cfg;
      cfg.k1 = 1 + rng.Below(4);
      const auto space = BuildTransformSpace(in, lex_, &emb_, cfg, p, 17);
      ASSERT_EQ(space.per_position.size(), in.size());
      for (std::size_t i = 0; i < in.size(); ++i) {
        const auto& list = space.per_position[i];
        ASSERT_LE(list.size(), cfg.k1);
        if (!in.tokens[i].perturbable()) ASSERT_TRUE(list.empty());
        std::set<std::string> seen;
        for (const auto& c : list) {
          ASSERT_NE(c, in.tokens[i].surface);
          ASSERT_TRUE(seen.insert(c).second);
        }
      }
      // Same seed, same space. WordNet and embedding ignore the seed.
      EXPECT_EQ(BuildTransformSpace(in, lex_, &emb_, cfg, p, 17).per_position,
                space.per_position);
      if (p == Provider::kWordNet || p == Provider::kEmbedding) {
        EXPECT_EQ(BuildTransformSpace(in, lex_, &emb_, cfg, p, 18).per_position,
                  space.per_position);
      }
    }
  }
}

TEST_F(TransformSpaceTest, WordNetRankingIsConsistentWithCosine) {
  LexiconConfig cfg;
  const auto in = Prepare("dry");
  const auto list =
      BuildTransformSpace(in, lex_, &emb_, cfg, Provider::kWordNet).per_position[0];
  std::vector<double> sims;
  for (const auto& c : list) {
    if (auto s = emb_.Similarity("dry", c)) sims.push_back(*s);
  }
  EXPECT_TRUE(std::is_sorted(sims.rbegin(), sims.rend()));
}

TEST(StopWords, LoadSkipsCommentsAndLowercases) {
  TempDir dir;
  WriteFile(dir / "s.txt", "# comment\nThe\n\nand\n");
  const auto s = StopWordSet::Load(dir / "s.txt");
  EXPECT_EQ(s.size(), 2u);
  EXPECT_TRUE(s.Contains("the"));
  EXPECT_TRUE(s.Contains("The"));
  EXPECT_TRUE(StopWordSet::English().Contains("the"));
}

}  // namespace
}  // namespace abfs::lexicon
