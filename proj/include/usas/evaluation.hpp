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

// Gold preprocessing and top-n accuracy.
//
// A gold token keeps only its first tag group, with affixes and MWE
// markers removed. Punctuation, Z99 and tags outside the inventory are not
// scored. A prediction at rank r <= n is a hit when its membership equals
// the gold membership; by default the order of the components matters.

#ifndef USAS_EVALUATION_HPP_
#define USAS_EVALUATION_HPP_

#include <cstddef>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "usas/corpus.hpp"
#include "usas/prediction.hpp"
#include "usas/tagset.hpp"

namespace usas {

enum class MembershipComparison { kOrdered, kUnordered };

bool TagsMatch(const ParsedTag &predicted, const ParsedTag &gold,
               MembershipComparison mode = MembershipComparison::kOrdered);

struct GoldToken {
  // Position in the flattened corpus (all tokens of all sentences).
  std::size_t token_index = 0;
  ParsedTag gold;
  bool multi_membership = false;
};

struct GoldCorpus {
  std::vector<GoldToken> tokens;
  std::size_t total_tokens = 0;
  std::size_t multi_membership = 0;

  std::size_t labelled() const { return tokens.size(); }
};

// Throws Error(kMalformedTag) with the corpus line.
GoldCorpus PreprocessGold(const Corpus &corpus, const SenseInventory *inventory = nullptr);

// Predictions are matched to gold tokens by token_index; a gold token
// without a prediction throws Error(kAlignment). Returns 0 for empty gold.
double TopNAccuracy(std::span<const GoldToken> gold, std::span<const RankedPrediction> predictions,
                    std::size_t n, MembershipComparison mode = MembershipComparison::kOrdered);

struct ProvenanceBreakdown {
  std::size_t tokens = 0;
  std::vector<std::size_t> hits;  // aligned with EvalReport::n_values
};

struct EvalReport {
  std::vector<std::size_t> n_values;
  std::vector<double> accuracy;
  std::size_t total_tokens = 0;
  std::size_t labelled_tokens = 0;
  std::size_t multi_membership = 0;
  std::map<Provenance, ProvenanceBreakdown> by_provenance;

  double multi_membership_percent() const {
    return labelled_tokens ? 100.0 * static_cast<double>(multi_membership) /
                                 static_cast<double>(labelled_tokens)
                           : 0.0;
  }
};

EvalReport EvaluateRun(const Corpus &corpus, const SentenceTagger &tagger,
                       std::span<const std::size_t> n_values,
                       const SenseInventory *inventory = nullptr,
                       MembershipComparison mode = MembershipComparison::kOrdered);

void WriteReportTable(std::ostream &out, const EvalReport &report, const std::string &model,
                      const std::string &language);

// One JSON object per n: {"model","language","n","accuracy","labelled",...}.
void WriteReportJsonl(std::ostream &out, const EvalReport &report, const std::string &model,
                      const std::string &language);

}  // namespace usas

#endif  // USAS_EVALUATION_HPP_
