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

#ifndef USAS_PREDICTION_HPP_
#define USAS_PREDICTION_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "usas/tagset.hpp"
#include "usas/token.hpp"

namespace usas {

enum class Provenance {
  kMwe,
  kSingleWord,
  kNeural,
  kUnmatched,
  // Pseudo-prediction for punctuation tokens; carries no candidates and is
  // written as "PUNC".
  kPunctuation,
};

const char *ProvenanceName(Provenance p);

struct RankedPrediction {
  std::size_t token_index = 0;
  // Most likely first.
  std::vector<ParsedTag> candidates;
  Provenance provenance = Provenance::kUnmatched;
  // Neural scores aligned with `candidates`; empty for rule predictions.
  std::vector<double> scores;

  // Canonical core of the first `k` candidates ("PUNC" for punctuation).
  std::vector<std::string> TopCores(std::size_t k) const;
};

bool SamePrediction(const RankedPrediction &a, const RankedPrediction &b);

// Anything that assigns ranked tags to every token of a sentence.
class SentenceTagger {
 public:
  virtual ~SentenceTagger() = default;
  virtual std::vector<RankedPrediction> TagSentence(std::span<const InputToken> tokens) const = 0;
};

}  // namespace usas

#endif  // USAS_PREDICTION_HPP_
