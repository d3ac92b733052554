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

#include "usas/prediction.hpp"

#include <algorithm>

namespace usas {

const char *ProvenanceName(Provenance p) {
  switch (p) {
    case Provenance::kMwe: return "mwe";
    case Provenance::kSingleWord: return "single_word";
    case Provenance::kNeural: return "neural";
    case Provenance::kUnmatched: return "unmatched";
    case Provenance::kPunctuation: return "punctuation";
  }
  return "?";
}

std::vector<std::string> RankedPrediction::TopCores(std::size_t k) const {
  if (provenance == Provenance::kPunctuation) return {"PUNC"};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < std::min(k, candidates.size()); ++i)
    out.push_back(CanonicalCore(candidates[i]));
  return out;
}

bool SamePrediction(const RankedPrediction &a, const RankedPrediction &b) {
  if (a.token_index != b.token_index || a.provenance != b.provenance ||
      a.scores != b.scores || a.candidates.size() != b.candidates.size())
    return false;
  for (std::size_t i = 0; i < a.candidates.size(); ++i) {
    const ParsedTag &x = a.candidates[i];
    const ParsedTag &y = b.candidates[i];
    if (x.raw != y.raw || x.membership != y.membership || !(x.affixes == y.affixes) ||
        x.mwe_marker != y.mwe_marker)
      return false;
  }
  return true;
}

}  // namespace usas
