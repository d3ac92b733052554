// Copyright 2026 The usas-hybrid Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <sstream>

#include "fixtures.hpp"
#include "usas/corpus.hpp"
#include "usas/error.hpp"
#include "usas/lexicon.hpp"

namespace usas {
namespace {

TEST(Corpus, ReadsExampleGold) {
  Corpus c = LoadCorpus(testing::DataPath("examples/coffee_gold.tsv"));
  ASSERT_EQ(c.documents.size(), 2u);
  EXPECT_EQ(c.documents[0].id, "coffee-01");
  EXPECT_EQ(c.documents[1].id, "willebrand");
  EXPECT_EQ(c.sentence_count(), 3u);
  EXPECT_EQ(c.token_count(), 12u);
  const CorpusToken &erik = c.documents[1].sentences[0].tokens[0];
  EXPECT_EQ(erik.tag_groups, (std::vector<std::string>{"Z1mf", "Z3c"}));
  EXPECT_EQ(erik.line, 13u);
}

TEST(Corpus, TagColumnForms) {
  EXPECT_EQ(ParseTagColumn("{Z1mf}{Z3c}"), (std::vector<std::string>{"Z1mf", "Z3c"}));
  EXPECT_EQ(ParseTagColumn("{Z1mf} {Z3c}"), (std::vector<std::string>{"Z1mf", "Z3c"}));
  EXPECT_EQ(ParseTagColumn("Y2 P1"), (std::vector<std::string>{"Y2", "P1"}));
  EXPECT_TRUE(ParseTagColumn("").empty());
}

TEST(Corpus, RoundTrip) {
  Corpus c = LoadCorpus(testing::DataPath("examples/coffee_gold.tsv"));
  std::stringstream buf;
  WriteCorpus(buf, c);
  Corpus back = ReadCorpus(buf);
  ASSERT_EQ(back.documents.size(), c.documents.size());
  for (std::size_t d = 0; d < c.documents.size(); ++d) {
    EXPECT_EQ(back.documents[d].id, c.documents[d].id);
    ASSERT_EQ(back.documents[d].sentences.size(), c.documents[d].sentences.size());
    for (std::size_t s = 0; s < c.documents[d].sentences.size(); ++s) {
      const auto &a = c.documents[d].sentences[s].tokens;
      const auto &b = back.documents[d].sentences[s].tokens;
      ASSERT_EQ(a.size(), b.size());
      for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].text, b[i].text);
        EXPECT_EQ(a[i].lemma, b[i].lemma);
        EXPECT_EQ(a[i].pos, b[i].pos);
        EXPECT_EQ(a[i].tag_groups, b[i].tag_groups);
      }
    }
  }
}

TEST(Corpus, MalformedLineReported) {
  std::istringstream in("a\ta\tNOUN\nbroken\tline\n");
  try {
    ReadCorpus(in);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::kMalformedInput);
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(Corpus, PosMapAndLemmaFallback) {
  PosMap map;
  map.Add("NN1", "NOUN");
  std::istringstream in("cat\t\tNN1\n");
  Corpus c = ReadCorpus(in, &map);
  const CorpusToken &t = c.documents.at(0).sentences.at(0).tokens.at(0);
  EXPECT_EQ(t.pos, "NOUN");
  EXPECT_EQ(t.lemma, "cat");
  Sentence s = c.documents[0].sentences[0].ToInput();
  EXPECT_EQ(s[0].index, 0u);
}

}  // namespace
}  // namespace usas
