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

#include "usas/tagset.hpp"

#include <cctype>
#include <charconv>
#include <fstream>

#include "usas/error.hpp"
#include "usas/text.hpp"

namespace usas {

namespace {

bool IsUpper(char c) { return c >= 'A' && c <= 'Z'; }
bool IsDigit(char c) { return c >= '0' && c <= '9'; }
bool IsAsciiAlnum(char c) {
  return IsDigit(c) || (c >= 'a' && c <= 'z') || IsUpper(c);
}

// Length of the longest prefix of `s` that is a category label, or 0.
std::size_t LabelPrefixLength(std::string_view s) {
  if (s.empty() || !IsUpper(s[0])) return 0;
  std::size_t i = 1;
  int levels = 0;
  if (i < s.size() && IsDigit(s[i])) {
    while (i < s.size() && IsDigit(s[i])) ++i;
    ++levels;
  }
  while (i + 1 < s.size() && s[i] == '.' && IsDigit(s[i + 1])) {
    ++i;
    while (i < s.size() && IsDigit(s[i])) ++i;
    ++levels;
  }
  if (levels > 3) return 0;
  return i;
}

std::optional<int> ParseInt(std::string_view s) {
  int value = 0;
  if (s.empty()) return std::nullopt;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

[[noreturn]] void Malformed(std::string_view raw, std::string_view why) {
  throw Error(ErrorKind::kMalformedTag,
              "'" + std::string(raw) + "': " + std::string(why));
}

}  // namespace

CategoryLabel::CategoryLabel(std::string_view code) {
  if (!IsValidCode(code)) Malformed(code, "not a category label");
  code_ = std::string(code);
}

std::optional<CategoryLabel> CategoryLabel::TryParse(std::string_view code) {
  if (!IsValidCode(code)) return std::nullopt;
  return CategoryLabel(code);
}

bool CategoryLabel::IsValidCode(std::string_view code) {
  return !code.empty() && LabelPrefixLength(code) == code.size();
}

void AffixSet::Add(char c) {
  std::size_t i = kAlphabet.find(c);
  if (i != std::string_view::npos) ++counts_[i];
}

int AffixSet::Count(char c) const {
  std::size_t i = kAlphabet.find(c);
  return i == std::string_view::npos ? 0 : counts_[i];
}

bool AffixSet::empty() const {
  for (int n : counts_)
    if (n != 0) return false;
  return true;
}

bool IsPunctuationMarker(std::string_view raw) {
  return raw == "PUNC" || raw == "PUNCT";
}

ParsedTag ParseTag(std::string_view raw) {
  if (raw.empty()) Malformed(raw, "empty tag");
  if (IsPunctuationMarker(raw)) Malformed(raw, "punctuation marker is not a tag");

  ParsedTag tag;
  tag.raw = std::string(raw);

  std::string_view core = raw;
  std::size_t bracket = raw.find('[');
  if (bracket != std::string_view::npos) {
    core = raw.substr(0, bracket);
    std::string_view marker = raw.substr(bracket + 1);
    if (marker.empty() || marker[0] != 'i') Malformed(raw, "bad MWE marker");
    std::vector<std::string> parts = Split(marker.substr(1), '.');
    if (parts.size() != 3) Malformed(raw, "MWE marker needs id.len.pos");
    auto id = ParseInt(parts[0]);
    auto len = ParseInt(parts[1]);
    auto pos = ParseInt(parts[2]);
    if (!id || !len || !pos) Malformed(raw, "MWE marker fields must be integers");
    tag.mwe_marker = MweMarker{*id, *len, *pos};
  }

  for (const std::string &component : Split(core, '/')) {
    std::string_view rest = component;
    std::size_t n = LabelPrefixLength(rest);
    if (n == 0) Malformed(raw, "component '" + component + "' has no label");
    tag.membership.emplace_back(rest.substr(0, n));
    for (char c : rest.substr(n)) {
      if (!AffixSet::IsAffix(c))
        Malformed(raw, std::string("unknown affix '") + c + "'");
      tag.affixes.Add(c);
    }
  }
  if (tag.membership.size() > kMaxMembership)
    Malformed(raw, "more than four membership components");
  return tag;
}

std::string CanonicalCore(const ParsedTag &tag) {
  std::string out;
  for (std::size_t i = 0; i < tag.membership.size(); ++i) {
    if (i > 0) out += '/';
    out += tag.membership[i].code();
  }
  return out;
}

std::vector<CategoryLabel> SplitMembership(const ParsedTag &tag) {
  return tag.membership;
}

bool IsDiscardable(const ParsedTag &tag) {
  for (const CategoryLabel &label : tag.membership)
    if (label.code() == "Z99") return true;
  return false;
}

bool IsDiscardable(std::string_view raw) {
  if (IsPunctuationMarker(raw)) return true;
  return IsDiscardable(ParseTag(raw));
}

std::vector<std::string> TokenizeGloss(std::string_view text) {
  std::vector<std::string> out;
  std::string current;
  for (char c : text) {
    if (IsAsciiAlnum(c) || static_cast<unsigned char>(c) >= 0x80) {
      current += c;
    } else if (!current.empty()) {
      out.push_back(ToLower(current));
      current.clear();
    }
  }
  if (!current.empty()) out.push_back(ToLower(current));
  return out;
}

SenseInventory::SenseInventory(std::vector<GlossEntry> entries)
    : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const GlossEntry &e = entries_[i];
    if (!index_.emplace(e.label.code(), i).second)
      throw Error(ErrorKind::kDuplicateLabel, e.label.code());
    if (e.gloss_tokens.empty())
      throw Error(ErrorKind::kEmptyGloss, e.label.code());
  }
}

SenseInventory SenseInventory::Load(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open inventory " + path);
  return Parse(in);
}

SenseInventory SenseInventory::Parse(std::istream &in) {
  std::vector<GlossEntry> entries;
  std::map<std::string, std::size_t, std::less<>> seen;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty()) continue;
    std::vector<std::string> cols = Split(line, '\t');
    if (!header_seen) {
      header_seen = true;
      if (cols.size() >= 2 && cols[0] == "tag" && cols[1] == "title") continue;
      throw Error(ErrorKind::kSchema,
                  "expected header 'tag<TAB>title<TAB>description'", line_no);
    }
    if (cols.size() < 2 || cols.size() > 3)
      throw Error(ErrorKind::kMalformedInput, "expected 2 or 3 columns", line_no);

    GlossEntry entry;
    try {
      entry.label = CategoryLabel(Trim(cols[0]));
    } catch (const Error &e) {
      throw Error(ErrorKind::kMalformedTag, e.what(), line_no);
    }
    entry.title = std::string(Trim(cols[1]));
    if (entry.title.empty())
      throw Error(ErrorKind::kMissingTitle, entry.label.code(), line_no);
    if (cols.size() == 3 && !Trim(cols[2]).empty())
      entry.description = std::string(Trim(cols[2]));
    if (!seen.emplace(entry.label.code(), line_no).second)
      throw Error(ErrorKind::kDuplicateLabel, entry.label.code(), line_no);

    std::string gloss = entry.title;
    if (entry.description) gloss += " " + *entry.description;
    entry.gloss_tokens = TokenizeGloss(gloss);
    if (entry.gloss_tokens.empty())
      throw Error(ErrorKind::kEmptyGloss, entry.label.code(), line_no);
    entries.push_back(std::move(entry));
  }
  return SenseInventory(std::move(entries));
}

std::optional<std::size_t> SenseInventory::IndexOf(const CategoryLabel &label) const {
  auto it = index_.find(label.code());
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const GlossEntry *SenseInventory::Find(const CategoryLabel &label) const {
  auto i = IndexOf(label);
  return i ? &entries_[*i] : nullptr;
}

bool SenseInventory::Covers(const ParsedTag &tag) const {
  for (const CategoryLabel &label : tag.membership)
    if (!Contains(label)) return false;
  return !tag.membership.empty();
}

}  // namespace usas
