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

#include "fixtures.hpp"
#include "usas/error.hpp"
#include "usas/mwe.hpp"
#include "usas/random.hpp"

namespace usas {
namespace {

using testing::BruteForceSelect;
using testing::MakeSentence;

TEST(WildcardMatcher, StarsStayInsideOnePart) {
  WildcardMatcher any("*");
  EXPECT_TRUE(any.matches_anything());
  EXPECT_TRUE(any.Matches(""));
  WildcardMatcher pre("Oce*");
  EXPECT_TRUE(pre.Matches("Ocean"));
  EXPECT_FALSE(pre.Matches("ocean"));
  EXPECT_TRUE(pre.MatchesFolded("ocean"));
  WildcardMatcher mid("a*b*c");
  EXPECT_TRUE(mid.Matches("abc"));
  EXPECT_TRUE(mid.Matches("axxbyyc"));
  EXPECT_FALSE(mid.Matches("acb"));
  EXPECT_TRUE(WildcardMatcher("pot").is_literal());
}

TEST(Pattern, CompileExamples) {
  Pattern p = Pattern::Compile("*_* Ocean_NOUN");
  ASSERT_EQ(p.size(), 2u);
  EXPECT_TRUE(p.slots()[0].word.matches_anything());
  EXPECT_EQ(p.slots()[1].word.pattern(), "Ocean");
  EXPECT_EQ(p.slots()[1].pos.pattern(), "NOUN");
  Pattern q = Pattern::Compile("*_VERB over_ADV");
  EXPECT_EQ(q.slots()[0].pos.pattern(), "VERB");
  // Split on the last underscore.
  Pattern r = Pattern::Compile("ice_cream_NOUN van_NOUN");
  EXPECT_EQ(r.slots()[0].word.pattern(), "ice_cream");
}

TEST(Pattern, MalformedTemplates) {
  for (const char *src : {"ocean_NOUN", "", "ocean NOUN", "_NOUN sea_NOUN", "sea_ ocean_NOUN"}) {
    try {
      Pattern::Compile(src);
      ADD_FAILURE() << src;
    } catch (const Error &e) {
      EXPECT_EQ(e.kind(), ErrorKind::kMalformedTemplate) << src;
    }
  }
}

TEST(Pattern, PacificOcean) {
  std::vector<Pattern> patterns = {Pattern::Compile("*_* Ocean_NOUN")};
  Sentence s = MakeSentence(
      {{"The", "the", "DET"}, {"Pacific", "Pacific", "PROPN"}, {"Ocean", "Ocean", "NOUN"}});
  auto got = MatchSentence(patterns, s);
  ASSERT_EQ(got.size(), 1u);
  EXPECT_EQ(got[0], (MweMatch{1, 2, 0}));
}

TEST(Pattern, FoldedRetryOnlyWithoutExactMatch) {
  std::vector<Pattern> patterns = {Pattern::Compile("Pacific_* Ocean_NOUN")};
  Sentence lower = MakeSentence({{"pacific", "pacific", "ADJ"}, {"ocean", "ocean", "NOUN"}});
  EXPECT_EQ(MatchSentence(patterns, lower).size(), 1u);
  // With an exact match elsewhere the folded occurrence is ignored.
  Sentence mixed = MakeSentence({{"pacific", "pacific", "ADJ"},
                                 {"ocean", "ocean", "NOUN"},
                                 {"Pacific", "Pacific", "PROPN"},
                                 {"Ocean", "Ocean", "NOUN"}});
  auto got = MatchSentence(patterns, mixed);
  ASSERT_EQ(got.size(), 1u);
  EXPECT_EQ(got[0].start, 2u);
  // POS is never folded.
  Sentence pos = MakeSentence({{"Pacific", "Pacific", "X"}, {"Ocean", "Ocean", "noun"}});
  EXPECT_TRUE(MatchSentence(patterns, pos).empty());
}

TEST(Pattern, AllWildcardMatchesEveryWindow) {
  std::vector<Pattern> patterns = {Pattern::Compile("*_* *_* *_*")};
  for (std::size_t n = 0; n < 9; ++n) {
    Sentence s;
    for (std::size_t i = 0; i < n; ++i) s.push_back(InputToken{"t", "t", "X", i});
    EXPECT_EQ(FindCandidateMatches(patterns, s).size(), n >= 3 ? n - 2 : 0);
    auto selected = MatchSentence(patterns, s);
    EXPECT_EQ(selected.size(), n / 3);
    for (std::size_t k = 0; k < selected.size(); ++k) EXPECT_EQ(selected[k].start, 3 * k);
  }
}

TEST(SelectMatches, PriorityOrder) {
  // Longer beats earlier; earlier beats file order.
  std::vector<MweMatch> c = {{0, 2, 0}, {1, 3, 1}, {4, 2, 2}, {4, 2, 3}};
  auto got = SelectMatches(c);
  ASSERT_EQ(got.size(), 2u);
  EXPECT_EQ(got[0], (MweMatch{1, 3, 1}));
  EXPECT_EQ(got[1], (MweMatch{4, 2, 2}));
  got = SelectMatches({{5, 2, 3}, {5, 2, 1}, {0, 2, 9}});
  ASSERT_EQ(got.size(), 2u);
  EXPECT_EQ(got[0], (MweMatch{0, 2, 9}));
  EXPECT_EQ(got[1], (MweMatch{5, 2, 1}));
}

// Every candidate set over a short sentence agrees with exhaustive search.
TEST(SelectMatches, AgreesWithBruteForce) {
  Rng rng(11);
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<MweMatch> c;
    std::size_t n = UniformIndex(rng, 9);
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t len = 2 + UniformIndex(rng, 3);
      std::size_t start = UniformIndex(rng, 5 - std::min<std::size_t>(len, 4) + 1);
      c.push_back({start, len, UniformIndex(rng, 4)});
    }
    EXPECT_EQ(SelectMatches(c), BruteForceSelect(c));
  }
}

TEST(MweMatcher, IndexedEqualsNaive) {
  const std::vector<std::string> words = {"a", "A", "b", "B", "c"};
  const std::vector<std::string> poses = {"N", "V"};
  const std::vector<std::string> parts = {"a", "A", "b", "c", "*", "a*", "B"};
  Rng rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<Pattern> patterns;
    std::size_t np = 1 + UniformIndex(rng, 5);
    for (std::size_t p = 0; p < np; ++p) {
      std::string src;
      std::size_t len = 2 + UniformIndex(rng, 2);
      for (std::size_t k = 0; k < len; ++k) {
        if (k) src += ' ';
        src += parts[UniformIndex(rng, parts.size())] + "_" +
               (UniformIndex(rng, 3) == 0 ? std::string("*") : poses[UniformIndex(rng, 2)]);
      }
      patterns.push_back(Pattern::Compile(src));
    }
    MweMatcher matcher(patterns);
    Sentence s;
    std::size_t n = UniformIndex(rng, 8);
    for (std::size_t i = 0; i < n; ++i) {
      std::string w = words[UniformIndex(rng, words.size())];
      s.push_back(InputToken{w, words[UniformIndex(rng, words.size())],
                             poses[UniformIndex(rng, 2)], i});
    }
    EXPECT_EQ(matcher.Match(s), MatchSentence(patterns, s));
    auto candidates = FindCandidateMatches(patterns, s);
    if (candidates.size() <= 16)
      EXPECT_EQ(MatchSentence(patterns, s), BruteForceSelect(candidates));
  }
}

}  // namespace
}  // namespace usas
