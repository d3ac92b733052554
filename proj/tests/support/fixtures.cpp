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

#include "fixtures.hpp"

#include <algorithm>
#include <sstream>

#include "usas/silver.hpp"

namespace usas::testing {

std::string DataPath(const std::string &relative) {
  return std::string(USAS_DATA_DIR) + "/" + relative;
}

const SenseInventory &UsasInventory() {
  static const SenseInventory inventory = SenseInventory::Load(DataPath("usas_inventory.tsv"));
  return inventory;
}

SenseInventory InventoryFromText(const std::string &tsv) {
  std::istringstream in(tsv);
  return SenseInventory::Parse(in);
}

SenseInventory SyntheticInventory(std::size_t senses) {
  std::ostringstream tsv;
  tsv << "tag\ttitle\tdescription\n";
  for (std::size_t s = 0; s < senses; ++s)
    tsv << "A" << (s + 1) << "\ttopic" << s << "\t\n";
  return InventoryFromText(tsv.str());
}

Sentence MakeSentence(const std::vector<std::vector<std::string>> &rows) {
  Sentence out;
  for (std::size_t i = 0; i < rows.size(); ++i)
    out.push_back(InputToken{rows[i].at(0), rows[i].at(1), rows[i].at(2), i});
  return out;
}

SeparableCorpus MakeSeparableCorpus(std::size_t senses, std::size_t examples,
                                    std::size_t train_examples, std::uint64_t seed) {
  constexpr std::size_t kWordsPerSense = 5;
  constexpr std::size_t kFillers = 50;
  constexpr std::size_t kLength = 5;
  SeparableCorpus out{SyntheticInventory(senses), {}, {}, {}};
  Rng rng(seed);
  struct Draft {
    std::vector<std::string> tokens;
    std::size_t target;
    CategoryLabel sense;
  };
  std::vector<Draft> drafts;
  TagFrequencyTable freq(out.inventory);
  for (std::size_t i = 0; i < examples; ++i) {
    std::size_t s = UniformIndex(rng, senses);
    std::string word = "w" + std::to_string(s) + "_" + std::to_string(UniformIndex(rng, kWordsPerSense));
    Draft d;
    for (std::size_t k = 0; k < kLength; ++k)
      d.tokens.push_back("f" + std::to_string(UniformIndex(rng, kFillers)));
    d.target = UniformIndex(rng, kLength);
    d.tokens[d.target] = word;
    d.sense = out.inventory.at(s).label;
    out.word_sense.emplace(word, d.sense);
    if (i < train_examples) freq.Add(d.sense);
    drafts.push_back(std::move(d));
  }
  DistributionSet dists = BuildDistributions(freq);
  for (std::size_t i = 0; i < drafts.size(); ++i) {
    TrainingExample ex{drafts[i].tokens, drafts[i].target, drafts[i].sense,
                       SampleNegatives({drafts[i].sense}, dists, rng)};
    (i < train_examples ? out.train : out.validation).push_back(std::move(ex));
  }
  return out;
}

double FrequencyBaselineAccuracy(const std::vector<TrainingExample> &train,
                                 const std::vector<TrainingExample> &validation) {
  std::map<std::string, std::map<std::string, std::size_t>> counts;
  for (const TrainingExample &ex : train) ++counts[ex.tokens[ex.target]][ex.positive.code()];
  if (validation.empty()) return 0.0;
  std::size_t hits = 0;
  for (const TrainingExample &ex : validation) {
    auto it = counts.find(ex.tokens[ex.target]);
    if (it == counts.end()) continue;
    auto best = std::max_element(it->second.begin(), it->second.end(),
                                 [](const auto &a, const auto &b) { return a.second < b.second; });
    if (best->first == ex.positive.code()) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(validation.size());
}

std::string StripToCore(const std::string &raw) {
  std::string out;
  for (char ch : raw.substr(0, raw.find('[')))
    if (std::string_view("%@mfcn+-").find(ch) == std::string_view::npos) out += ch;
  return out;
}

std::vector<std::pair<MatchKind, std::vector<std::string>>> OracleLookup(
    const std::vector<LexiconRow> &rows, const std::string &lemma, const std::string &pos,
    const std::string &token) {
  struct Stage {
    MatchKind kind;
    std::string lemma;
    std::optional<std::string> pos;
  };
  auto lower = [](std::string s) {
    for (char &ch : s)
      if (ch >= 'A' && ch <= 'Z') ch = static_cast<char>(ch - 'A' + 'a');
    return s;
  };
  std::vector<Stage> stages = {{MatchKind::kLemmaPos, lemma, pos},
                               {MatchKind::kLowerTokenPos, lower(token), pos},
                               {MatchKind::kLemma, lemma, std::nullopt},
                               {MatchKind::kLowerLemma, lower(lemma), std::nullopt}};
  std::vector<std::pair<MatchKind, std::vector<std::string>>> out;
  for (std::size_t s = 0; s < stages.size(); ++s) {
    bool repeat = false;
    for (std::size_t e = 0; e < s; ++e)
      if (stages[e].lemma == stages[s].lemma && stages[e].pos == stages[s].pos) repeat = true;
    if (repeat) continue;
    std::vector<std::string> tags;
    for (const LexiconRow &r : rows) {
      if (r.lemma != stages[s].lemma) continue;
      if (stages[s].pos && r.pos != *stages[s].pos) continue;
      for (const std::string &t : r.tags) {
        std::string core = StripToCore(t);
        if (std::find(tags.begin(), tags.end(), core) == tags.end()) tags.push_back(core);
      }
    }
    if (!tags.empty()) out.emplace_back(stages[s].kind, tags);
  }
  return out;
}

std::vector<MweMatch> BruteForceSelect(const std::vector<MweMatch> &candidates) {
  std::vector<MweMatch> ranked = candidates;
  std::sort(ranked.begin(), ranked.end(), [](const MweMatch &a, const MweMatch &b) {
    if (a.length != b.length) return a.length > b.length;
    if (a.start != b.start) return a.start < b.start;
    return a.entry < b.entry;
  });
  const std::size_t n = ranked.size();
  std::vector<bool> best;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<bool> take(n);
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      take[i] = (mask >> i) & 1;
      if (!take[i]) continue;
      for (std::size_t j = 0; j < i; ++j) {
        if (!take[j]) continue;
        const MweMatch &a = ranked[i], &b = ranked[j];
        if (a.start < b.start + b.length && b.start < a.start + a.length) ok = false;
      }
    }
    if (ok && (best.empty() || take > best)) best = take;
  }
  std::vector<MweMatch> out;
  for (std::size_t i = 0; i < n; ++i)
    if (!best.empty() && best[i]) out.push_back(ranked[i]);
  std::sort(out.begin(), out.end(),
            [](const MweMatch &a, const MweMatch &b) { return a.start < b.start; });
  return out;
}

std::vector<double> ScalarContext(const std::vector<float> &target_table,
                                  const std::vector<float> &context_table, std::size_t dim,
                                  const std::vector<std::uint32_t> &ids, std::size_t target,
                                  std::size_t window) {
  std::vector<double> u(dim);
  for (std::size_t k = 0; k < dim; ++k) u[k] = target_table[ids[target] * dim + k];
  std::vector<std::size_t> neighbours;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    std::size_t dist = i > target ? i - target : target - i;
    if (i != target && dist <= window) neighbours.push_back(i);
  }
  for (std::size_t k = 0; k < dim; ++k) {
    double sum = 0.0;
    for (std::size_t i : neighbours) sum += context_table[ids[i] * dim + k];
    if (!neighbours.empty()) u[k] += sum / static_cast<double>(neighbours.size());
  }
  return u;
}

namespace {

// Normalised weights restricted to the labels not in `blocked`.
std::vector<double> Conditional(const std::vector<double> &w, const std::vector<bool> &blocked) {
  double mass = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (!blocked[i]) mass += w[i];
  std::vector<double> out(w.size(), 0.0);
  for (std::size_t i = 0; i < w.size(); ++i)
    if (!blocked[i] && mass > 0.0) out[i] = w[i] / mass;
  return out;
}

}  // namespace

std::array<std::vector<double>, 3> ExactNegativeMarginals(
    const std::array<std::vector<double>, 3> &weights, const std::vector<bool> &excluded) {
  const std::size_t m = excluded.size();
  std::array<std::vector<double>, 3> out;
  for (auto &v : out) v.assign(m, 0.0);
  std::vector<double> first = Conditional(weights[0], excluded);
  for (std::size_t i = 0; i < m; ++i) {
    if (first[i] == 0.0) continue;
    out[0][i] += first[i];
    std::vector<bool> b1 = excluded;
    b1[i] = true;
    std::vector<double> second = Conditional(weights[1], b1);
    for (std::size_t j = 0; j < m; ++j) {
      if (second[j] == 0.0) continue;
      out[1][j] += first[i] * second[j];
      std::vector<bool> b2 = b1;
      b2[j] = true;
      std::vector<double> third = Conditional(weights[2], b2);
      for (std::size_t k = 0; k < m; ++k) out[2][k] += first[i] * second[j] * third[k];
    }
  }
  return out;
}

std::pair<double, std::size_t> ChiSquare(const std::vector<std::size_t> &observed,
                                         const std::vector<double> &probability) {
  std::size_t n = 0;
  for (std::size_t o : observed) n += o;
  double stat = 0.0;
  std::size_t cells = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (probability[i] <= 0.0) continue;
    double expected = probability[i] * static_cast<double>(n);
    double diff = static_cast<double>(observed[i]) - expected;
    stat += diff * diff / expected;
    ++cells;
  }
  return {stat, cells > 0 ? cells - 1 : 0};
}

}  // namespace usas::testing
