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

// Single-word and MWE lexicons.
//
// Single-word lexicon TSV:  lemma<TAB>pos<TAB>tag tag ...
// MWE lexicon TSV:          template<TAB>tag tag ...
//
// Tag order in a row is the ranking order: the first tag is the most
// likely one. Lexicons are frozen after loading and may be shared across
// threads.

#ifndef USAS_LEXICON_HPP_
#define USAS_LEXICON_HPP_

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "usas/mwe.hpp"
#include "usas/tagset.hpp"

namespace usas {

// Maps POS strings from one tagset to another (file of from<TAB>to pairs).
// Unmapped values pass through unchanged.
class PosMap {
 public:
  PosMap() = default;
  static PosMap Load(const std::string &path);
  static PosMap Parse(std::istream &in);

  void Add(std::string from, std::string to) { map_[std::move(from)] = std::move(to); }
  std::string Apply(std::string_view pos) const;
  bool empty() const { return map_.empty(); }

 private:
  std::map<std::string, std::string, std::less<>> map_;
};

struct SingleWordEntry {
  std::string lemma;
  std::string pos;
  std::vector<ParsedTag> tags;
};

enum class MatchKind {
  kLemmaPos,         // lemma + POS
  kLowerTokenPos,    // lowercased token + POS
  kLemma,            // lemma, any POS
  kLowerLemma,       // lowercased lemma, any POS
};

const char *MatchKindName(MatchKind kind);

struct LookupHit {
  MatchKind kind;
  std::span<const ParsedTag> tags;
};

class SingleWordLexicon {
 public:
  SingleWordLexicon() = default;

  // Malformed tags are reported with their line number. An optional first
  // line whose first cell is "lemma" is treated as a header.
  static SingleWordLexicon Load(const std::string &path, const PosMap &pos_map = {});
  static SingleWordLexicon Parse(std::istream &in, const PosMap &pos_map = {});

  // Duplicate (lemma, pos) keys append tags; tags whose canonical core is
  // already present for the key are skipped.
  void Add(const std::string &lemma, const std::string &pos,
           const std::vector<ParsedTag> &tags);

  // All successful lookups in fallback order. A stage whose key repeats an
  // earlier stage's key is not reported again.
  std::vector<LookupHit> Lookup(std::string_view lemma, std::string_view pos,
                                std::string_view token) const;

  const std::vector<ParsedTag> *Find(std::string_view lemma, std::string_view pos) const;
  const std::vector<ParsedTag> *FindAnyPos(std::string_view lemma) const;

  std::size_t size() const { return by_lemma_pos_.size(); }
  bool empty() const { return by_lemma_pos_.empty(); }

  // Every tag in the lexicon, in insertion order.
  std::vector<const ParsedTag *> AllTags() const;

 private:
  using Key = std::pair<std::string, std::string>;

  std::map<Key, std::vector<ParsedTag>, std::less<>> by_lemma_pos_;
  std::map<std::string, std::vector<ParsedTag>, std::less<>> by_lemma_;
  std::vector<Key> insertion_order_;
};

struct MweEntry {
  std::string template_source;
  Pattern pattern;
  std::vector<ParsedTag> tags;
};

class MweLexicon {
 public:
  MweLexicon() = default;
  explicit MweLexicon(std::vector<MweEntry> entries);

  static MweLexicon Load(const std::string &path, const PosMap &pos_map = {});
  static MweLexicon Parse(std::istream &in, const PosMap &pos_map = {});

  const std::vector<MweEntry> &entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  // Selected, non-overlapping matches; MweMatch::entry indexes entries().
  std::vector<MweMatch> Match(std::span<const InputToken> tokens) const {
    return matcher_.Match(tokens);
  }

 private:
  std::vector<MweEntry> entries_;
  MweMatcher matcher_;
};

// Parses whitespace separated tags; errors carry `line`.
std::vector<ParsedTag> ParseTagList(std::string_view text, std::size_t line);

}  // namespace usas

#endif  // USAS_LEXICON_HPP_
