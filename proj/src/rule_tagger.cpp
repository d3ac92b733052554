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

#include "usas/rule_tagger.hpp"

namespace usas {

std::set<std::string, std::less<>> DefaultPunctuationPos() { return {"PUNCT", "PUNC"}; }

RuleTagger::RuleTagger(std::shared_ptr<const SingleWordLexicon> single,
                       std::shared_ptr<const MweLexicon> mwe,
                       std::set<std::string, std::less<>> punctuation_pos)
    : single_(single ? std::move(single) : std::make_shared<SingleWordLexicon>()),
      mwe_(mwe ? std::move(mwe) : std::make_shared<MweLexicon>()),
      punctuation_pos_(std::move(punctuation_pos)),
      unmatched_(ParseTag("Z99")) {}

namespace {

std::vector<ParsedTag> DedupByCore(std::span<const ParsedTag> tags) {
  std::vector<ParsedTag> out;
  std::set<std::string> seen;
  for (const ParsedTag &t : tags)
    if (seen.insert(CanonicalCore(t)).second) out.push_back(t);
  return out;
}

}  // namespace

std::vector<RankedPrediction> RuleTagger::TagSentence(std::span<const InputToken> tokens) const {
  std::vector<RankedPrediction> out(tokens.size());
  std::vector<bool> covered(tokens.size(), false);

  for (const MweMatch &m : mwe_->Match(tokens)) {
    const MweEntry &entry = mwe_->entries()[m.entry];
    for (std::size_t i = m.start; i < m.start + m.length; ++i) {
      out[i].candidates = DedupByCore(entry.tags);
      out[i].provenance = Provenance::kMwe;
      covered[i] = true;
    }
  }

  for (std::size_t i = 0; i < tokens.size(); ++i) {
    RankedPrediction &pred = out[i];
    pred.token_index = i;
    if (covered[i]) continue;
    const InputToken &tok = tokens[i];
    if (IsPunctuation(tok)) {
      pred.provenance = Provenance::kPunctuation;
      continue;
    }
    std::vector<LookupHit> hits = single_->Lookup(tok.lemma, tok.pos, tok.text);
    if (!hits.empty()) {
      pred.candidates = DedupByCore(hits.front().tags);
      pred.provenance = Provenance::kSingleWord;
    } else {
      pred.candidates = {unmatched_};
      pred.provenance = Provenance::kUnmatched;
    }
  }
  return out;
}

}  // namespace usas
