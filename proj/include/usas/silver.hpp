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

// Silver training data from a rule-tagged corpus.
//
// Every labelled token contributes one example per positive label (dual
// and triple memberships are split, affixes dropped, PUNC and Z99 tags
// skipped). Each example gets three negatives, one drawn from each of the
// ORIGINAL, INVERSE and LOG_INVERSE label distributions of the train split,
// all distinct and disjoint from the token's positives.

#ifndef USAS_SILVER_HPP_
#define USAS_SILVER_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "usas/bi_encoder.hpp"
#include "usas/corpus.hpp"
#include "usas/random.hpp"
#include "usas/tagset.hpp"

namespace usas {

class TagFrequencyTable {
 public:
  explicit TagFrequencyTable(const SenseInventory &inventory);

  // Throws Error(kUnknownLabel) for labels outside the inventory.
  void Add(const CategoryLabel &label, std::uint64_t n = 1);

  std::uint64_t count(const CategoryLabel &label) const;
  std::uint64_t total() const { return total_; }
  const std::vector<CategoryLabel> &labels() const { return labels_; }
  const std::vector<std::uint64_t> &counts() const { return counts_; }

 private:
  std::vector<CategoryLabel> labels_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

enum class DistributionKind { kOriginal, kInverse, kLogInverse };

const char *DistributionName(DistributionKind kind);

class SamplingDistribution {
 public:
  SamplingDistribution() = default;
  // Weights are normalised; negative or all-zero weights throw
  // Error(kEmptyTable).
  SamplingDistribution(DistributionKind kind, std::vector<CategoryLabel> labels,
                       std::vector<double> weights);

  DistributionKind kind() const { return kind_; }
  const std::vector<CategoryLabel> &labels() const { return labels_; }
  const std::vector<double> &weights() const { return weights_; }
  double weight(const CategoryLabel &label) const;

  std::size_t Draw(Rng &rng) const;
  // Draw conditioned on not landing in `excluded` (indices into labels()).
  // Returns labels().size() when the remaining mass is zero.
  std::size_t DrawExcluding(Rng &rng, const std::vector<bool> &excluded) const;

 private:
  DistributionKind kind_ = DistributionKind::kOriginal;
  std::vector<CategoryLabel> labels_;
  std::vector<double> weights_;
  std::vector<double> cumulative_;
};

using DistributionSet = std::array<SamplingDistribution, 3>;

// ORIGINAL  w(t) = count(t) / N
// INVERSE   w(t) ~ 1 / count(t)
// LOG_INVERSE w(t) ~ log2(1 + N / count(t))
// Labels with a zero count get zero weight. Throws Error(kEmptyTable) when
// N == 0.
DistributionSet BuildDistributions(const TagFrequencyTable &freq);

// One negative per distribution, in ORIGINAL, INVERSE, LOG_INVERSE order.
// Collisions with the positives or earlier negatives are redrawn. Throws
// Error(kInsufficientLabels) when fewer than three supported labels lie
// outside the positives.
std::array<CategoryLabel, 3> SampleNegatives(const std::vector<CategoryLabel> &positives,
                                             const DistributionSet &dists, Rng &rng);

struct PositiveTarget {
  std::string doc_id;
  std::size_t sentence = 0;
  std::vector<std::string> tokens;
  std::size_t target = 0;
  std::vector<CategoryLabel> positives;
};

// Labels outside `inventory` are dropped when an inventory is given.
// Malformed tags throw Error(kMalformedTag) with the corpus line.
std::vector<PositiveTarget> ExtractPositives(const Corpus &corpus,
                                             const SenseInventory *inventory = nullptr);

struct SplitSpec {
  enum class Unit { kDocument, kSentence };
  Unit unit = Unit::kDocument;
  double train_fraction = 0.95;

  // "95:5" style ratio.
  static SplitSpec Parse(std::string_view ratio, Unit unit = Unit::kDocument);
};

struct SilverRecord {
  std::string doc_id;
  TrainingExample example;
};

struct SilverDataset {
  std::vector<SilverRecord> train;
  std::vector<SilverRecord> validation;
  TagFrequencyTable frequencies;
  DistributionSet distributions;
  std::vector<std::string> warnings;
};

// Distributions come from the train split only and are used for the
// negatives of both splits. Each document draws from its own stream keyed
// by (seed, document id). Throws Error(kEmptyCorpus).
SilverDataset MakeDataset(const Corpus &corpus, const SenseInventory &inventory,
                          const SplitSpec &split, std::uint64_t seed);

std::vector<TrainingExample> Examples(const std::vector<SilverRecord> &records);

// One JSON object per line:
// {"doc":..,"tokens":[..],"target":i,"positive":"F2",
//  "negatives":{"original":..,"inverse":..,"log_inverse":..}}
void WriteSilver(std::ostream &out, const std::vector<SilverRecord> &records);
// Throws Error(kSchema) with the line number on a bad record.
std::vector<SilverRecord> ReadSilver(std::istream &in);
std::vector<SilverRecord> LoadSilver(const std::string &path);

// Top and bottom `n` labels of each distribution.
void WriteDistributionReport(std::ostream &out, const DistributionSet &dists,
                             std::size_t n = 10);

}  // namespace usas

#endif  // USAS_SILVER_HPP_
