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

// Multiword-expression templates.
//
// A template is a whitespace separated list of `word_POS` slots, e.g.
// "*_* Ocean_NOUN". Each part may contain `*`, which matches any (possibly
// empty) run of characters inside that part only; it never spans tokens.
// A slot accepts a token when its word part matches the token text or the
// lemma, and its POS part matches the POS.

#ifndef USAS_MWE_HPP_
#define USAS_MWE_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "usas/token.hpp"

namespace usas {

// Glob matcher restricted to the `*` metacharacter.
class WildcardMatcher {
 public:
  WildcardMatcher() = default;
  explicit WildcardMatcher(std::string pattern);

  bool Matches(std::string_view s) const;
  // Case-insensitive (ASCII) variant.
  bool MatchesFolded(std::string_view s) const;

  bool is_literal() const { return pieces_.size() == 1 && !leading_star_ && !trailing_star_; }
  bool matches_anything() const { return pieces_.empty() && leading_star_; }
  const std::string &pattern() const { return pattern_; }

 private:
  static bool MatchPieces(const std::vector<std::string> &pieces, bool leading,
                          bool trailing, std::string_view s);

  std::string pattern_;
  std::vector<std::string> pieces_;
  std::vector<std::string> folded_pieces_;
  bool leading_star_ = false;
  bool trailing_star_ = false;
};

struct Slot {
  WildcardMatcher word;
  WildcardMatcher pos;
};

class Pattern {
 public:
  // Throws Error(kMalformedTemplate) when a slot lacks "_", has an empty
  // part, or the template has fewer than two slots.
  static Pattern Compile(std::string_view source);

  const std::vector<Slot> &slots() const { return slots_; }
  const std::string &source() const { return source_; }
  std::size_t size() const { return slots_.size(); }

  // Checks the window starting at `start`; `folded` compares word parts
  // case-insensitively.
  bool MatchesAt(std::span<const InputToken> tokens, std::size_t start,
                 bool folded) const;

 private:
  std::vector<Slot> slots_;
  std::string source_;
};

struct MweMatch {
  std::size_t start = 0;
  std::size_t length = 0;
  // Index of the pattern in the list handed to the matcher, which is the
  // lexicon file order.
  std::size_t entry = 0;

  friend bool operator==(const MweMatch &, const MweMatch &) = default;
};

// All raw (possibly overlapping) matches of every pattern, before
// selection. Case-sensitive first; a pattern with no case-sensitive match
// anywhere in the sentence is retried with folded word parts.
std::vector<MweMatch> FindCandidateMatches(std::span<const Pattern> patterns,
                                           std::span<const InputToken> tokens);

// Greedy non-overlapping selection: longer span first, then leftmost
// start, then lower entry index. Result is ordered by start.
std::vector<MweMatch> SelectMatches(std::vector<MweMatch> candidates);

std::vector<MweMatch> MatchSentence(std::span<const Pattern> patterns,
                                    std::span<const InputToken> tokens);

// Index over a fixed pattern list keyed by the first literal word part, so
// that only patterns anchored on a word present in the sentence are tried.
class MweMatcher {
 public:
  MweMatcher() = default;
  explicit MweMatcher(std::vector<Pattern> patterns);

  std::vector<MweMatch> Match(std::span<const InputToken> tokens) const;

  const std::vector<Pattern> &patterns() const { return patterns_; }

 private:
  struct Anchor {
    std::size_t pattern;
    std::size_t offset;
  };

  std::vector<Pattern> patterns_;
  std::unordered_map<std::string, std::vector<Anchor>> exact_;
  std::unordered_map<std::string, std::vector<Anchor>> folded_;
  std::vector<std::size_t> unanchored_;
};

}  // namespace usas

#endif  // USAS_MWE_HPP_
