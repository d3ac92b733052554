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

#include "usas/mwe.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "usas/error.hpp"
#include "usas/text.hpp"

namespace usas {

WildcardMatcher::WildcardMatcher(std::string pattern) : pattern_(std::move(pattern)) {
  leading_star_ = !pattern_.empty() && pattern_.front() == '*';
  trailing_star_ = !pattern_.empty() && pattern_.back() == '*';
  for (const std::string &piece : Split(pattern_, '*'))
    if (!piece.empty()) pieces_.push_back(piece);
  for (const std::string &piece : pieces_) folded_pieces_.push_back(ToLower(piece));
}

bool WildcardMatcher::MatchPieces(const std::vector<std::string> &pieces,
                                  bool leading, bool trailing,
                                  std::string_view s) {
  if (!leading && !trailing && pieces.size() == 1) return s == pieces[0];
  std::size_t pos = 0;
  std::size_t end = s.size();
  std::size_t first = 0;
  std::size_t last = pieces.size();
  if (!leading) {
    if (pieces.empty() || !s.starts_with(pieces[0])) return false;
    pos = pieces[0].size();
    first = 1;
  }
  if (!trailing && last > first) {
    const std::string &tail = pieces[last - 1];
    if (s.size() < pos + tail.size() || !s.ends_with(tail)) return false;
    end = s.size() - tail.size();
    --last;
  }
  for (std::size_t i = first; i < last; ++i) {
    std::size_t found = s.substr(0, end).find(pieces[i], pos);
    if (found == std::string_view::npos) return false;
    pos = found + pieces[i].size();
  }
  return pos <= end;
}

bool WildcardMatcher::Matches(std::string_view s) const {
  return MatchPieces(pieces_, leading_star_, trailing_star_, s);
}

bool WildcardMatcher::MatchesFolded(std::string_view s) const {
  return MatchPieces(folded_pieces_, leading_star_, trailing_star_, ToLower(s));
}

Pattern Pattern::Compile(std::string_view source) {
  Pattern pattern;
  pattern.source_ = std::string(Trim(source));
  for (const std::string &slot_text : SplitWhitespace(source)) {
    // The POS part follows the last underscore so that word parts such as
    // "New_York" are not split in the wrong place.
    std::size_t sep = slot_text.rfind('_');
    if (sep == std::string::npos)
      throw Error(ErrorKind::kMalformedTemplate,
                  "slot '" + slot_text + "' has no '_' in '" + pattern.source_ + "'");
    std::string word = slot_text.substr(0, sep);
    std::string pos = slot_text.substr(sep + 1);
    if (word.empty() || pos.empty())
      throw Error(ErrorKind::kMalformedTemplate,
                  "slot '" + slot_text + "' has an empty part");
    pattern.slots_.push_back(Slot{WildcardMatcher(word), WildcardMatcher(pos)});
  }
  if (pattern.slots_.size() < 2)
    throw Error(ErrorKind::kMalformedTemplate,
                "template '" + pattern.source_ + "' needs at least two slots");
  return pattern;
}

bool Pattern::MatchesAt(std::span<const InputToken> tokens, std::size_t start,
                        bool folded) const {
  if (start + slots_.size() > tokens.size()) return false;
  for (std::size_t k = 0; k < slots_.size(); ++k) {
    const Slot &slot = slots_[k];
    const InputToken &tok = tokens[start + k];
    if (!slot.pos.Matches(tok.pos)) return false;
    bool word_ok = folded ? (slot.word.MatchesFolded(tok.text) ||
                             slot.word.MatchesFolded(tok.lemma))
                          : (slot.word.Matches(tok.text) || slot.word.Matches(tok.lemma));
    if (!word_ok) return false;
  }
  return true;
}

namespace {

void MatchPatternAt(const Pattern &pattern, std::size_t entry,
                    std::span<const InputToken> tokens,
                    const std::set<std::size_t> &exact_starts,
                    const std::set<std::size_t> &folded_starts,
                    std::vector<MweMatch> &out) {
  bool any = false;
  for (std::size_t start : exact_starts) {
    if (pattern.MatchesAt(tokens, start, false)) {
      out.push_back(MweMatch{start, pattern.size(), entry});
      any = true;
    }
  }
  if (any) return;
  for (std::size_t start : folded_starts) {
    if (pattern.MatchesAt(tokens, start, true))
      out.push_back(MweMatch{start, pattern.size(), entry});
  }
}

std::set<std::size_t> AllStarts(const Pattern &pattern, std::size_t n) {
  std::set<std::size_t> starts;
  for (std::size_t s = 0; s + pattern.size() <= n; ++s) starts.insert(s);
  return starts;
}

}  // namespace

std::vector<MweMatch> FindCandidateMatches(std::span<const Pattern> patterns,
                                           std::span<const InputToken> tokens) {
  std::vector<MweMatch> out;
  for (std::size_t p = 0; p < patterns.size(); ++p) {
    std::set<std::size_t> starts = AllStarts(patterns[p], tokens.size());
    MatchPatternAt(patterns[p], p, tokens, starts, starts, out);
  }
  return out;
}

std::vector<MweMatch> SelectMatches(std::vector<MweMatch> candidates) {
  std::sort(candidates.begin(), candidates.end(),
            [](const MweMatch &a, const MweMatch &b) {
              if (a.length != b.length) return a.length > b.length;
              if (a.start != b.start) return a.start < b.start;
              return a.entry < b.entry;
            });
  std::vector<MweMatch> chosen;
  for (const MweMatch &m : candidates) {
    bool overlaps = false;
    for (const MweMatch &c : chosen) {
      if (m.start < c.start + c.length && c.start < m.start + m.length) {
        overlaps = true;
        break;
      }
    }
    if (!overlaps) chosen.push_back(m);
  }
  std::sort(chosen.begin(), chosen.end(),
            [](const MweMatch &a, const MweMatch &b) { return a.start < b.start; });
  return chosen;
}

std::vector<MweMatch> MatchSentence(std::span<const Pattern> patterns,
                                    std::span<const InputToken> tokens) {
  return SelectMatches(FindCandidateMatches(patterns, tokens));
}

MweMatcher::MweMatcher(std::vector<Pattern> patterns) : patterns_(std::move(patterns)) {
  for (std::size_t p = 0; p < patterns_.size(); ++p) {
    const auto &slots = patterns_[p].slots();
    bool anchored = false;
    for (std::size_t k = 0; k < slots.size(); ++k) {
      if (slots[k].word.is_literal()) {
        const std::string &literal = slots[k].word.pattern();
        exact_[literal].push_back(Anchor{p, k});
        folded_[ToLower(literal)].push_back(Anchor{p, k});
        anchored = true;
        break;
      }
    }
    if (!anchored) unanchored_.push_back(p);
  }
}

std::vector<MweMatch> MweMatcher::Match(std::span<const InputToken> tokens) const {
  // pattern -> candidate starts, for the exact and the folded pass.
  std::map<std::size_t, std::pair<std::set<std::size_t>, std::set<std::size_t>>> todo;
  auto add = [&](const std::unordered_map<std::string, std::vector<Anchor>> &index,
                 const std::string &key, std::size_t position, bool exact) {
    auto it = index.find(key);
    if (it == index.end()) return;
    for (const Anchor &a : it->second) {
      if (position < a.offset) continue;
      std::size_t start = position - a.offset;
      if (start + patterns_[a.pattern].size() > tokens.size()) continue;
      auto &entry = todo[a.pattern];
      (exact ? entry.first : entry.second).insert(start);
    }
  };
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    add(exact_, tokens[i].text, i, true);
    add(exact_, tokens[i].lemma, i, true);
    add(folded_, ToLower(tokens[i].text), i, false);
    add(folded_, ToLower(tokens[i].lemma), i, false);
  }
  for (std::size_t p : unanchored_) {
    std::set<std::size_t> starts = AllStarts(patterns_[p], tokens.size());
    todo[p] = {starts, starts};
  }

  std::vector<MweMatch> candidates;
  for (const auto &[p, starts] : todo)
    MatchPatternAt(patterns_[p], p, tokens, starts.first, starts.second, candidates);
  return SelectMatches(std::move(candidates));
}

}  // namespace usas
