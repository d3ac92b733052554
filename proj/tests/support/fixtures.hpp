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

// Shared fixtures and independent oracles for the test suites. Nothing
// here calls into the code path an oracle is used to check.

#ifndef USAS_TESTS_FIXTURES_HPP_
#define USAS_TESTS_FIXTURES_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "usas/bi_encoder.hpp"
#include "usas/lexicon.hpp"
#include "usas/mwe.hpp"
#include "usas/random.hpp"
#include "usas/tagset.hpp"
#include "usas/token.hpp"

namespace usas::testing {

std::string DataPath(const std::string &relative);

const SenseInventory &UsasInventory();

SenseInventory InventoryFromText(const std::string &tsv);

// `senses` labels A1..An with one-word distinct glosses.
SenseInventory SyntheticInventory(std::size_t senses);

Sentence MakeSentence(const std::vector<std::vector<std::string>> &rows);

// A corpus where every pseudo-word "w<s>_<j>" always means sense s. Targets
// sit in 5-token sentences of random filler words.
struct SeparableCorpus {
  SenseInventory inventory;
  std::vector<TrainingExample> train;
  std::vector<TrainingExample> validation;
  std::map<std::string, CategoryLabel> word_sense;
};

SeparableCorpus MakeSeparableCorpus(std::size_t senses, std::size_t examples,
                                    std::size_t train_examples, std::uint64_t seed);

// Majority positive per target word on `train`, scored on `validation`.
double FrequencyBaselineAccuracy(const std::vector<TrainingExample> &train,
                                 const std::vector<TrainingExample> &validation);

// Drops an MWE marker and every affix character from a raw tag string.
std::string StripToCore(const std::string &raw);

struct LexiconRow {
  std::string lemma, pos;
  std::vector<std::string> tags;
};

// Four-stage lookup by scanning every row: lemma+POS, lowercased token+POS,
// lemma, lowercased lemma. A stage whose key equals an earlier stage's key is
// skipped. Tags are canonical cores, first occurrence wins.
std::vector<std::pair<MatchKind, std::vector<std::string>>> OracleLookup(
    const std::vector<LexiconRow> &rows, const std::string &lemma, const std::string &pos,
    const std::string &token);

// Brute-force selection oracle: among all pairwise non-overlapping subsets
// of `candidates`, the one whose membership vector is lexicographically
// greatest when candidates are listed longest / leftmost / lowest entry
// first. Returned ordered by start.
std::vector<MweMatch> BruteForceSelect(const std::vector<MweMatch> &candidates);

// Reference encoder evaluated with plain scalar loops straight from the
// formula, independent of BasicBiEncoder's implementation.
std::vector<double> ScalarContext(const std::vector<float> &target_table,
                                  const std::vector<float> &context_table, std::size_t dim,
                                  const std::vector<std::uint32_t> &ids, std::size_t target,
                                  std::size_t window);

// Exact per-slot marginals of the three negatives when each slot draws from
// its own weights conditioned on avoiding `excluded` and the earlier slots.
// Computed by enumerating every earlier outcome.
std::array<std::vector<double>, 3> ExactNegativeMarginals(
    const std::array<std::vector<double>, 3> &weights, const std::vector<bool> &excluded);

// Pearson statistic of observed counts against expected probabilities,
// skipping zero-probability cells. Returns {statistic, degrees of freedom}.
std::pair<double, std::size_t> ChiSquare(const std::vector<std::size_t> &observed,
                                         const std::vector<double> &probability);

}  // namespace usas::testing

#endif  // USAS_TESTS_FIXTURES_HPP_
