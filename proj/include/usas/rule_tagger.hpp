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

#ifndef USAS_RULE_TAGGER_HPP_
#define USAS_RULE_TAGGER_HPP_

#include <memory>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "usas/lexicon.hpp"
#include "usas/prediction.hpp"

namespace usas {

std::set<std::string, std::less<>> DefaultPunctuationPos();

// Lexicon based tagger. For every token: MWE match tags if the token lies
// inside an accepted match; otherwise the tags of the first successful
// single-word lookup stage; otherwise Z99.
class RuleTagger : public SentenceTagger {
 public:
  RuleTagger(std::shared_ptr<const SingleWordLexicon> single,
             std::shared_ptr<const MweLexicon> mwe,
             std::set<std::string, std::less<>> punctuation_pos = DefaultPunctuationPos());

  std::vector<RankedPrediction> TagSentence(std::span<const InputToken> tokens) const override;

  bool IsPunctuation(const InputToken &token) const {
    return punctuation_pos_.count(token.pos) > 0;
  }

 private:
  std::shared_ptr<const SingleWordLexicon> single_;
  std::shared_ptr<const MweLexicon> mwe_;
  std::set<std::string, std::less<>> punctuation_pos_;
  ParsedTag unmatched_;
};

}  // namespace usas

#endif  // USAS_RULE_TAGGER_HPP_
