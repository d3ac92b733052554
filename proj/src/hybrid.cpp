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

#include "usas/hybrid.hpp"

#include <algorithm>

#include "usas/error.hpp"

namespace usas {

NeuralTagger::NeuralTagger(std::shared_ptr<const BiEncoder> model, std::size_t top_k,
                           std::set<std::string, std::less<>> punctuation_pos)
    : model_(std::move(model)),
      glosses_(model_->BuildGlossMatrix()),
      top_k_(std::max<std::size_t>(1, top_k)),
      punctuation_pos_(std::move(punctuation_pos)) {}

RankedPrediction NeuralTagger::PredictToken(std::span<const InputToken> tokens,
                                            std::size_t index, std::size_t k) const {
  std::vector<std::string> words;
  words.reserve(tokens.size());
  for (const InputToken &t : tokens) words.push_back(t.text);
  std::vector<double> u = model_->EncodeContext(words, index);
  RankedPrediction pred;
  pred.token_index = index;
  pred.provenance = Provenance::kNeural;
  k = std::clamp<std::size_t>(k, 1, glosses_.size());
  for (const auto &[label, score] : glosses_.TopK(u, k)) {
    pred.candidates.push_back(ParseTag(label.code()));
    pred.scores.push_back(score);
  }
  return pred;
}

std::vector<RankedPrediction> NeuralTagger::TagSentence(std::span<const InputToken> tokens) const {
  std::vector<RankedPrediction> out;
  out.reserve(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (punctuation_pos_.count(tokens[i].pos)) {
      RankedPrediction p;
      p.token_index = i;
      p.provenance = Provenance::kPunctuation;
      out.push_back(std::move(p));
      continue;
    }
    out.push_back(PredictToken(tokens, i, top_k_));
  }
  return out;
}

HybridTagger::HybridTagger(std::shared_ptr<const RuleTagger> rule,
                           std::shared_ptr<const NeuralTagger> neural, HybridConfig config)
    : rule_(std::move(rule)), neural_(std::move(neural)), config_(config) {
  if (config_.k_backoff < 1) throw Error(ErrorKind::kSchema, "k_backoff must be >= 1");
}

std::vector<RankedPrediction> HybridTagger::TagSentence(std::span<const InputToken> tokens) const {
  std::vector<RankedPrediction> out = rule_->TagSentence(tokens);
  if (!neural_) return out;
  for (std::size_t i = 0; i < out.size(); ++i)
    if (out[i].provenance == Provenance::kUnmatched)
      out[i] = neural_->PredictToken(tokens, i, config_.k_backoff);
  return out;
}

}  // namespace usas
