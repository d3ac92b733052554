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

#include "usas/evaluation.hpp"

#include <algorithm>
#include <limits>
#include <iomanip>
#include <unordered_map>

#include "json.hpp"
#include "usas/error.hpp"

namespace usas {

bool TagsMatch(const ParsedTag &predicted, const ParsedTag &gold, MembershipComparison mode) {
  if (mode == MembershipComparison::kOrdered) return predicted.membership == gold.membership;
  std::vector<CategoryLabel> a = predicted.membership, b = gold.membership;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return a == b;
}

GoldCorpus PreprocessGold(const Corpus &corpus, const SenseInventory *inventory) {
  GoldCorpus out;
  std::size_t index = 0;
  for (const Document &doc : corpus.documents) {
    for (const CorpusSentence &sentence : doc.sentences) {
      for (const CorpusToken &tok : sentence.tokens) {
        std::size_t position = index++;
        ++out.total_tokens;
        if (tok.tag_groups.empty()) continue;
        const std::string &first = tok.tag_groups.front();
        if (IsPunctuationMarker(first)) continue;
        ParsedTag tag;
        try {
          tag = ParseTag(first);
        } catch (const Error &e) {
          throw Error(ErrorKind::kMalformedTag, e.what(), tok.line);
        }
        if (IsDiscardable(tag)) continue;
        if (inventory && !inventory->Covers(tag)) continue;
        ParsedTag gold;
        gold.membership = tag.membership;
        gold.raw = CanonicalCore(tag);
        bool multi = gold.membership.size() > 1;
        if (multi) ++out.multi_membership;
        out.tokens.push_back(GoldToken{position, std::move(gold), multi});
      }
    }
  }
  return out;
}

namespace {

std::unordered_map<std::size_t, const RankedPrediction *> IndexPredictions(
    std::span<const RankedPrediction> predictions) {
  std::unordered_map<std::size_t, const RankedPrediction *> by_index;
  for (const RankedPrediction &p : predictions)
    if (!by_index.emplace(p.token_index, &p).second)
      throw Error(ErrorKind::kAlignment,
                  "two predictions for token " + std::to_string(p.token_index));
  return by_index;
}

const RankedPrediction &Aligned(
    const std::unordered_map<std::size_t, const RankedPrediction *> &by_index,
    const GoldToken &g) {
  auto it = by_index.find(g.token_index);
  if (it == by_index.end())
    throw Error(ErrorKind::kAlignment, "no prediction for token " + std::to_string(g.token_index));
  return *it->second;
}

constexpr std::size_t kNoHit = std::numeric_limits<std::size_t>::max();

// Rank (0-based) of the first matching candidate, or kNoHit.
std::size_t HitRank(const RankedPrediction &pred, const ParsedTag &gold,
                    MembershipComparison mode) {
  for (std::size_t r = 0; r < pred.candidates.size(); ++r)
    if (TagsMatch(pred.candidates[r], gold, mode)) return r;
  return kNoHit;
}

}  // namespace

double TopNAccuracy(std::span<const GoldToken> gold, std::span<const RankedPrediction> predictions,
                    std::size_t n, MembershipComparison mode) {
  auto by_index = IndexPredictions(predictions);
  if (gold.empty()) return 0.0;
  std::size_t hits = 0;
  for (const GoldToken &g : gold)
    if (HitRank(Aligned(by_index, g), g.gold, mode) < n) ++hits;
  return static_cast<double>(hits) / static_cast<double>(gold.size());
}

EvalReport EvaluateRun(const Corpus &corpus, const SentenceTagger &tagger,
                       std::span<const std::size_t> n_values, const SenseInventory *inventory,
                       MembershipComparison mode) {
  GoldCorpus gold = PreprocessGold(corpus, inventory);
  std::vector<RankedPrediction> predictions;
  std::size_t offset = 0;
  for (const Document &doc : corpus.documents) {
    for (const CorpusSentence &sentence : doc.sentences) {
      Sentence input = sentence.ToInput();
      std::vector<RankedPrediction> preds = tagger.TagSentence(input);
      if (preds.size() != input.size())
        throw Error(ErrorKind::kAlignment, "tagger returned " + std::to_string(preds.size()) +
                                               " predictions for " +
                                               std::to_string(input.size()) + " tokens");
      for (RankedPrediction &p : preds) {
        p.token_index += offset;
        predictions.push_back(std::move(p));
      }
      offset += input.size();
    }
  }

  EvalReport report;
  report.n_values.assign(n_values.begin(), n_values.end());
  report.total_tokens = gold.total_tokens;
  report.labelled_tokens = gold.labelled();
  report.multi_membership = gold.multi_membership;
  for (std::size_t n : n_values)
    report.accuracy.push_back(TopNAccuracy(gold.tokens, predictions, n, mode));

  auto by_index = IndexPredictions(predictions);
  for (const GoldToken &g : gold.tokens) {
    const RankedPrediction &pred = Aligned(by_index, g);
    ProvenanceBreakdown &b = report.by_provenance[pred.provenance];
    if (b.hits.empty()) b.hits.assign(n_values.size(), 0);
    ++b.tokens;
    std::size_t rank = HitRank(pred, g.gold, mode);
    for (std::size_t i = 0; i < n_values.size(); ++i)
      if (rank < n_values[i]) ++b.hits[i];
  }
  return report;
}

void WriteReportTable(std::ostream &out, const EvalReport &report, const std::string &model,
                      const std::string &language) {
  out << "model: " << model << "  language: " << language << '\n';
  out << "tokens: " << report.total_tokens << "  labelled: " << report.labelled_tokens
      << "  multi-membership: " << report.multi_membership << " (" << std::fixed
      << std::setprecision(1) << report.multi_membership_percent() << "%)\n";
  out << std::left << std::setw(14) << "provenance" << std::setw(10) << "tokens";
  for (std::size_t n : report.n_values) out << std::setw(10) << ("top-" + std::to_string(n));
  out << '\n';
  out << std::setw(14) << "all" << std::setw(10) << report.labelled_tokens;
  for (double a : report.accuracy) out << std::setw(10) << std::setprecision(1) << 100.0 * a;
  out << '\n';
  for (const auto &[prov, b] : report.by_provenance) {
    out << std::setw(14) << ProvenanceName(prov) << std::setw(10) << b.tokens;
    for (std::size_t h : b.hits)
      out << std::setw(10) << std::setprecision(1)
          << (b.tokens ? 100.0 * static_cast<double>(h) / static_cast<double>(b.tokens) : 0.0);
    out << '\n';
  }
  out.unsetf(std::ios::fixed);
  out << std::right;
}

void WriteReportJsonl(std::ostream &out, const EvalReport &report, const std::string &model,
                      const std::string &language) {
  for (std::size_t i = 0; i < report.n_values.size(); ++i) {
    nlohmann::ordered_json j;
    j["model"] = model;
    j["language"] = language;
    j["n"] = report.n_values[i];
    j["accuracy"] = report.accuracy[i];
    j["tokens"] = report.total_tokens;
    j["labelled"] = report.labelled_tokens;
    j["multi_membership"] = report.multi_membership;
    nlohmann::ordered_json prov;
    for (const auto &[p, b] : report.by_provenance)
      prov[ProvenanceName(p)] = {{"tokens", b.tokens}, {"hits", b.hits[i]}};
    j["by_provenance"] = std::move(prov);
    out << j.dump() << '\n';
  }
}

}  // namespace usas
