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

#include "usas/lexicon.hpp"

#include <algorithm>
#include <fstream>

#include "usas/error.hpp"
#include "usas/text.hpp"

namespace usas {

namespace {

std::ifstream OpenOrThrow(const std::string &path, const char *what) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, std::string("cannot open ") + what + " " + path);
  return in;
}

bool NextLine(std::istream &in, std::string &line, std::size_t &line_no) {
  if (!std::getline(in, line)) return false;
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

void AppendUnique(std::vector<ParsedTag> &dst, const ParsedTag &tag) {
  std::string core = CanonicalCore(tag);
  for (const ParsedTag &t : dst)
    if (CanonicalCore(t) == core) return;
  dst.push_back(tag);
}

}  // namespace

PosMap PosMap::Load(const std::string &path) {
  auto in = OpenOrThrow(path, "POS map");
  return Parse(in);
}

PosMap PosMap::Parse(std::istream &in) {
  PosMap map;
  std::string line;
  std::size_t line_no = 0;
  while (NextLine(in, line, line_no)) {
    if (Trim(line).empty() || line[0] == '#') continue;
    std::vector<std::string> cols = Split(line, '\t');
    if (cols.size() != 2)
      throw Error(ErrorKind::kMalformedInput, "expected from<TAB>to", line_no);
    map.Add(std::string(Trim(cols[0])), std::string(Trim(cols[1])));
  }
  return map;
}

std::string PosMap::Apply(std::string_view pos) const {
  auto it = map_.find(pos);
  return it == map_.end() ? std::string(pos) : it->second;
}

const char *MatchKindName(MatchKind kind) {
  switch (kind) {
    case MatchKind::kLemmaPos: return "lemma+pos";
    case MatchKind::kLowerTokenPos: return "lower-token+pos";
    case MatchKind::kLemma: return "lemma";
    case MatchKind::kLowerLemma: return "lower-lemma";
  }
  return "?";
}

std::vector<ParsedTag> ParseTagList(std::string_view text, std::size_t line) {
  std::vector<ParsedTag> tags;
  for (const std::string &raw : SplitWhitespace(text)) {
    try {
      tags.push_back(ParseTag(raw));
    } catch (const Error &e) {
      throw Error(ErrorKind::kMalformedTag, e.what(), line);
    }
  }
  return tags;
}

SingleWordLexicon SingleWordLexicon::Load(const std::string &path, const PosMap &pos_map) {
  auto in = OpenOrThrow(path, "lexicon");
  return Parse(in, pos_map);
}

SingleWordLexicon SingleWordLexicon::Parse(std::istream &in, const PosMap &pos_map) {
  SingleWordLexicon lexicon;
  std::string line;
  std::size_t line_no = 0;
  while (NextLine(in, line, line_no)) {
    if (Trim(line).empty()) continue;
    std::vector<std::string> cols = Split(line, '\t');
    if (line_no == 1 && cols[0] == "lemma") continue;
    if (cols.size() != 3)
      throw Error(ErrorKind::kMalformedInput, "expected lemma<TAB>pos<TAB>tags", line_no);
    std::vector<ParsedTag> tags = ParseTagList(cols[2], line_no);
    if (tags.empty())
      throw Error(ErrorKind::kMalformedInput, "row without tags", line_no);
    lexicon.Add(std::string(Trim(cols[0])), pos_map.Apply(Trim(cols[1])), tags);
  }
  return lexicon;
}

void SingleWordLexicon::Add(const std::string &lemma, const std::string &pos,
                            const std::vector<ParsedTag> &tags) {
  Key key{lemma, pos};
  auto [it, inserted] = by_lemma_pos_.try_emplace(key);
  if (inserted) insertion_order_.push_back(key);
  std::vector<ParsedTag> &any_pos = by_lemma_[lemma];
  for (const ParsedTag &tag : tags) {
    AppendUnique(it->second, tag);
    AppendUnique(any_pos, tag);
  }
}

const std::vector<ParsedTag> *SingleWordLexicon::Find(std::string_view lemma,
                                                      std::string_view pos) const {
  auto it = by_lemma_pos_.find(Key{std::string(lemma), std::string(pos)});
  return it == by_lemma_pos_.end() ? nullptr : &it->second;
}

const std::vector<ParsedTag> *SingleWordLexicon::FindAnyPos(std::string_view lemma) const {
  auto it = by_lemma_.find(lemma);
  return it == by_lemma_.end() ? nullptr : &it->second;
}

std::vector<LookupHit> SingleWordLexicon::Lookup(std::string_view lemma,
                                                 std::string_view pos,
                                                 std::string_view token) const {
  std::vector<LookupHit> hits;
  std::string lower_token = ToLower(token);
  std::string lower_lemma = ToLower(lemma);

  if (const auto *tags = Find(lemma, pos)) hits.push_back({MatchKind::kLemmaPos, *tags});
  if (lower_token != lemma) {
    if (const auto *tags = Find(lower_token, pos))
      hits.push_back({MatchKind::kLowerTokenPos, *tags});
  }
  if (const auto *tags = FindAnyPos(lemma)) hits.push_back({MatchKind::kLemma, *tags});
  if (lower_lemma != lemma) {
    if (const auto *tags = FindAnyPos(lower_lemma))
      hits.push_back({MatchKind::kLowerLemma, *tags});
  }
  return hits;
}

std::vector<const ParsedTag *> SingleWordLexicon::AllTags() const {
  std::vector<const ParsedTag *> out;
  for (const Key &key : insertion_order_)
    for (const ParsedTag &tag : by_lemma_pos_.find(key)->second) out.push_back(&tag);
  return out;
}

MweLexicon::MweLexicon(std::vector<MweEntry> entries) : entries_(std::move(entries)) {
  std::vector<Pattern> patterns;
  patterns.reserve(entries_.size());
  for (const MweEntry &e : entries_) patterns.push_back(e.pattern);
  matcher_ = MweMatcher(std::move(patterns));
}

MweLexicon MweLexicon::Load(const std::string &path, const PosMap &pos_map) {
  auto in = OpenOrThrow(path, "MWE lexicon");
  return Parse(in, pos_map);
}

namespace {

std::string MapTemplatePos(const std::string &source, const PosMap &pos_map) {
  if (pos_map.empty()) return source;
  std::vector<std::string> slots;
  for (const std::string &slot : SplitWhitespace(source)) {
    std::size_t sep = slot.rfind('_');
    if (sep == std::string::npos) {
      slots.push_back(slot);
      continue;
    }
    std::string pos = slot.substr(sep + 1);
    if (pos.find('*') == std::string::npos) pos = pos_map.Apply(pos);
    slots.push_back(slot.substr(0, sep + 1) + pos);
  }
  return Join(slots, " ");
}

}  // namespace

MweLexicon MweLexicon::Parse(std::istream &in, const PosMap &pos_map) {
  std::vector<MweEntry> entries;
  std::string line;
  std::size_t line_no = 0;
  while (NextLine(in, line, line_no)) {
    if (Trim(line).empty()) continue;
    std::vector<std::string> cols = Split(line, '\t');
    if (line_no == 1 && cols[0] == "mwe_template") continue;
    if (cols.size() != 2)
      throw Error(ErrorKind::kMalformedInput, "expected template<TAB>tags", line_no);
    std::string source = MapTemplatePos(std::string(Trim(cols[0])), pos_map);
    MweEntry entry{source, Pattern{}, {}};
    try {
      entry.pattern = Pattern::Compile(source);
    } catch (const Error &e) {
      throw Error(ErrorKind::kMalformedTemplate, e.what(), line_no);
    }
    for (const ParsedTag &tag : ParseTagList(cols[1], line_no)) AppendUnique(entry.tags, tag);
    if (entry.tags.empty())
      throw Error(ErrorKind::kMalformedInput, "row without tags", line_no);
    entries.push_back(std::move(entry));
  }
  return MweLexicon(std::move(entries));
}

}  // namespace usas
