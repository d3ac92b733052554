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

#ifndef USAS_HYBRID_HPP_
#define USAS_HYBRID_HPP_

#include <cstddef>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "usas/bi_encoder.hpp"
#include "usas/prediction.hpp"
#include "usas/rule_tagger.hpp"

namespace usas {

// Ranks the full label set for every non-punctuation token with a trained
// bi-encoder. Predictions are single category labels.
class NeuralTagger : public SentenceTagger {
 public:
  NeuralTagger(std::shared_ptr<const BiEncoder> model, std::size_t top_k,
               std::set<std::string, std::less<>> punctuation_pos = DefaultPunctuationPos());

  std::vector<RankedPrediction> TagSentence(std::span<const InputToken> tokens) const override;

  // Top-k for one target; k is clamped to the label count.
  RankedPrediction PredictToken(std::span<const InputToken> tokens, std::size_t index,
                                std::size_t k) const;

  const GlossMatrix &glosses() const { return glosses_; }
  std::size_t top_k() const { return top_k_; }

 private:
  std::shared_ptr<const BiEncoder> model_;
  GlossMatrix glosses_;
  std::size_t top_k_;
  std::set<std::string, std::less<>> punctuation_pos_;
};

struct HybridConfig {
  // Neural candidates emitted when the rule tagger has no lexicon entry.
  std::size_t k_backoff = 5;
};

// Rule predictions pass through untouched; only UNMATCHED tokens are
// re-tagged by the neural model.
class HybridTagger : public SentenceTagger {
 public:
  HybridTagger(std::shared_ptr<const RuleTagger> rule, std::shared_ptr<const NeuralTagger> neural,
               HybridConfig config = {});

  std::vector<RankedPrediction> TagSentence(std::span<const InputToken> tokens) const override;

 private:
  std::shared_ptr<const RuleTagger> rule_;
  std::shared_ptr<const NeuralTagger> neural_;
  HybridConfig config_;
};

}  // namespace usas

#endif  // USAS_HYBRID_HPP_
