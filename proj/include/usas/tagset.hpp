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

// USAS tag grammar and the category-label sense inventory.
//
// A tag string as it appears in lexicons and tagged corpora looks like
//
//   F2/O2[i135.2.1     dual membership with an MWE marker
//   Z1mf               single label with gender affixes
//   A5.1+++            single label with a repeated comparative affix
//
// The core of a tag is one to four category labels joined by "/". Each
// label may be followed by affix symbols; an optional "[i" marker closes
// the tag. Affixes and markers are kept for round-tripping only and are
// dropped by CanonicalCore().

#ifndef USAS_TAGSET_HPP_
#define USAS_TAGSET_HPP_

#include <array>
#include <compare>
#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace usas {

// A single USAS code: one uppercase letter, optional digits, then up to
// two further ".digits" levels (e.g. "Z2", "O1.3", "A1.1.1").
class CategoryLabel {
 public:
  CategoryLabel() = default;

  // Throws Error(kMalformedTag) if `code` does not match the grammar.
  explicit CategoryLabel(std::string_view code);

  static std::optional<CategoryLabel> TryParse(std::string_view code);
  static bool IsValidCode(std::string_view code);

  const std::string &code() const { return code_; }
  char field() const { return code_.empty() ? '\0' : code_[0]; }

  friend auto operator<=>(const CategoryLabel &, const CategoryLabel &) = default;
  friend bool operator==(const CategoryLabel &, const CategoryLabel &) = default;

 private:
  std::string code_;
};

// Affix symbols attached to a tag. "+" and "-" carry repetition counts;
// the others are present or absent.
class AffixSet {
 public:
  static constexpr std::string_view kAlphabet = "%@mfcn+-";

  static bool IsAffix(char c) { return kAlphabet.find(c) != std::string_view::npos; }

  void Add(char c);
  int Count(char c) const;
  bool Has(char c) const { return Count(c) > 0; }
  bool empty() const;

  friend bool operator==(const AffixSet &, const AffixSet &) = default;

 private:
  std::array<int, kAlphabet.size()> counts_{};
};

// Decoded "[iID.LEN.POS" suffix. The fields are interpreted structurally
// as (entry id, span length, 1-based position) and never used for logic.
struct MweMarker {
  int entry_id = 0;
  int span_length = 0;
  int position = 0;

  friend bool operator==(const MweMarker &, const MweMarker &) = default;
};

struct ParsedTag {
  std::vector<CategoryLabel> membership;
  AffixSet affixes;
  std::optional<MweMarker> mwe_marker;
  std::string raw;

  bool is_multi_membership() const { return membership.size() > 1; }
};

inline constexpr std::size_t kMaxMembership = 4;

// Throws Error(kMalformedTag) for empty input, the PUNC/PUNCT markers and
// any core that does not match the grammar.
ParsedTag ParseTag(std::string_view raw);

// Membership joined with "/", affixes and marker dropped.
std::string CanonicalCore(const ParsedTag &tag);

std::vector<CategoryLabel> SplitMembership(const ParsedTag &tag);

bool IsPunctuationMarker(std::string_view raw);

// True for PUNC/PUNCT and for any tag with a Z99 component.
bool IsDiscardable(const ParsedTag &tag);
bool IsDiscardable(std::string_view raw);

// Lowercases and splits on runs of non-alphanumeric ASCII. Non-ASCII bytes
// count as word characters.
std::vector<std::string> TokenizeGloss(std::string_view text);

struct GlossEntry {
  CategoryLabel label;
  std::string title;
  std::optional<std::string> description;
  std::vector<std::string> gloss_tokens;
};

// The category labels with their glosses, in file order. Immutable once
// loaded.
class SenseInventory {
 public:
  SenseInventory() = default;
  explicit SenseInventory(std::vector<GlossEntry> entries);

  // Gloss TSV with header "tag<TAB>title<TAB>description".
  static SenseInventory Load(const std::string &path);
  static SenseInventory Parse(std::istream &in);

  std::size_t size() const { return entries_.size(); }
  const std::vector<GlossEntry> &entries() const { return entries_; }
  const GlossEntry &at(std::size_t index) const { return entries_.at(index); }

  bool Contains(const CategoryLabel &label) const { return index_.count(label.code()) > 0; }
  std::optional<std::size_t> IndexOf(const CategoryLabel &label) const;
  const GlossEntry *Find(const CategoryLabel &label) const;

  // All membership components are inventory labels.
  bool Covers(const ParsedTag &tag) const;

 private:
  std::vector<GlossEntry> entries_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

inline constexpr std::size_t kUsasInventorySize = 232;

}  // namespace usas

#endif  // USAS_TAGSET_HPP_
