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

// Gloss bi-encoder.
//
// Context and glosses are encoded by one shared encoder. The shipped
// reference encoder is a pair of embedding tables:
//
//   u   = T[t_i] + mean_{k in window(i)} C[t_k]      context embedding
//   j_n = mean_{g in gloss(n)} T[g]                   gloss embedding
//   s_n = u . j_n                                     score
//
// T (target table) embeds target words and gloss tokens, C (context table)
// only feeds the window average. Training minimises the cross entropy of
// the positive sense against three sampled negatives.
//
// Any replacement encoder must honour the same contract: one vector per
// input word (averaging sub-word units when it splits a word) and a gloss
// vector that is the mean of its token encodings.

#ifndef USAS_BI_ENCODER_HPP_
#define USAS_BI_ENCODER_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "usas/tagset.hpp"

namespace usas {

struct EncoderConfig {
  std::uint32_t dim = 64;
  std::uint32_t vocab_size = 1u << 16;
  // Context tokens on each side of the target.
  std::uint32_t window = 2;
  std::uint64_t seed = 0;
  // Plain mini-batch gradient descent step on the mean batch loss. The
  // reference encoder's sparse rows receive tiny averaged gradients, hence
  // the large value; a pre-trained transformer encoder would be fine-tuned
  // with something like 1e-5 instead.
  double learning_rate = 20.0;
  std::size_t batch_size = 64;
  // Parameters start uniform in [-init_range, init_range). Not stored in
  // checkpoints.
  double init_range = 0.05;
};

// Token ids for the reference encoder. Gloss tokens of the label set get
// dedicated ids [0, reserved); every other token hashes into
// [reserved, vocab_size). Lookup is case-insensitive.
class Vocabulary {
 public:
  Vocabulary() = default;
  Vocabulary(const std::vector<std::vector<std::string>> &gloss_tokens,
             std::uint32_t vocab_size);

  std::uint32_t Id(std::string_view token) const;
  std::uint32_t reserved() const { return static_cast<std::uint32_t>(known_.size()); }
  std::uint32_t size() const { return vocab_size_; }

 private:
  std::unordered_map<std::string, std::uint32_t> known_;
  std::uint32_t vocab_size_ = 0;
};

struct TrainingExample {
  std::vector<std::string> tokens;
  std::size_t target = 0;
  CategoryLabel positive;
  std::array<CategoryLabel, 3> negatives;
};

// Throws Error(kMalformedInput) unless the target is in range, the
// positive is not a negative, and the negatives are pairwise distinct.
void ValidateExample(const TrainingExample &example);

// Example with token and label ids resolved; candidates[0] is the
// positive.
struct EncodedExample {
  std::vector<std::uint32_t> token_ids;
  std::size_t target = 0;
  std::array<std::size_t, 4> candidates{};
};

// Row-wise gradient over the two tables; only touched rows are stored.
struct SparseGradient {
  std::map<std::uint32_t, std::vector<double>> target;
  std::map<std::uint32_t, std::vector<double>> context;

  void Add(const SparseGradient &other, double scale = 1.0);
};

struct LossResult {
  double loss = 0.0;
  std::array<double, 4> scores{};
  SparseGradient gradient;
};

// Numerically stable -log softmax(scores)[0].
double CandidateCrossEntropy(std::span<const double> scores);

// Precomputed sense embeddings, one row per label in `labels` order.
class GlossMatrix {
 public:
  GlossMatrix() = default;
  GlossMatrix(std::vector<CategoryLabel> labels, std::size_t dim, std::vector<double> rows);

  std::size_t size() const { return labels_.size(); }
  std::size_t dim() const { return dim_; }
  const std::vector<CategoryLabel> &labels() const { return labels_; }
  std::span<const double> row(std::size_t n) const {
    return {rows_.data() + n * dim_, dim_};
  }

  // score[n] = u . row(n). Throws Error(kDimensionMismatch).
  std::vector<double> Score(std::span<const double> u) const;

  // Labels by descending score, ties by ascending code. 1 <= k <= size().
  std::vector<std::pair<CategoryLabel, double>> TopK(std::span<const double> u,
                                                     std::size_t k) const;

 private:
  std::vector<CategoryLabel> labels_;
  std::size_t dim_ = 0;
  std::vector<double> rows_;
};

template <typename Real>
class BasicBiEncoder {
 public:
  // Random initialisation from config.seed; label order follows the
  // inventory.
  BasicBiEncoder(const EncoderConfig &config, const SenseInventory &inventory);

  const EncoderConfig &config() const { return config_; }
  std::size_t dim() const { return config_.dim; }
  std::size_t num_labels() const { return labels_.size(); }
  const std::vector<CategoryLabel> &label_order() const { return labels_; }
  const Vocabulary &vocabulary() const { return vocab_; }

  std::optional<std::size_t> LabelIndex(const CategoryLabel &label) const;

  std::vector<Real> &target_table() { return target_; }
  const std::vector<Real> &target_table() const { return target_; }
  std::vector<Real> &context_table() { return context_; }
  const std::vector<Real> &context_table() const { return context_; }

  // Throws Error(kIndexOutOfRange).
  std::vector<double> EncodeContext(std::span<const std::string> tokens,
                                    std::size_t target_index) const;
  std::vector<double> EncodeContextIds(std::span<const std::uint32_t> ids,
                                       std::size_t target_index) const;

  std::vector<double> GlossRow(std::size_t label) const;
  GlossMatrix BuildGlossMatrix() const;

  // Throws Error(kUnknownLabel) for labels outside label_order().
  EncodedExample Encode(const TrainingExample &example) const;

  LossResult Loss(const EncodedExample &example) const;
  double LossValue(const EncodedExample &example) const { return Loss(example).loss; }

  // params -= step * gradient
  void ApplyGradient(const SparseGradient &gradient, double step);

  // Binary checkpoint: "USASBEM1", u32 dim, u32 vocab_size, u32 window,
  // u64 seed, target then context table as little-endian float32 rows,
  // u32 label count, then each label as u32 byte length + UTF-8 bytes.
  void Save(std::ostream &out) const;
  void SaveFile(const std::string &path) const;
  // Labels in the checkpoint must all exist in `inventory`.
  static BasicBiEncoder Load(std::istream &in, const SenseInventory &inventory);
  static BasicBiEncoder LoadFile(const std::string &path, const SenseInventory &inventory);

 private:
  BasicBiEncoder(const EncoderConfig &config, const SenseInventory &inventory,
                 std::vector<CategoryLabel> labels);

  EncoderConfig config_;
  std::vector<CategoryLabel> labels_;
  std::map<std::string, std::size_t, std::less<>> label_index_;
  std::vector<std::vector<std::uint32_t>> gloss_ids_;
  Vocabulary vocab_;
  std::vector<Real> target_;
  std::vector<Real> context_;
};

extern template class BasicBiEncoder<float>;
extern template class BasicBiEncoder<double>;

using BiEncoder = BasicBiEncoder<float>;

struct TrainOptions {
  std::size_t max_epochs = 3;
  // Checkpoints without validation improvement before stopping.
  std::size_t patience = 3;
  std::size_t checkpoints_per_epoch = 5;
  // Checkpoint files are written here when non-empty.
  std::string checkpoint_dir;
};

struct CheckpointRecord {
  std::size_t epoch = 0;
  std::size_t index = 0;
  std::size_t examples_seen = 0;
  double mean_loss = 0.0;
  // Positive outscores all three negatives.
  double validation_accuracy = 0.0;
  // Positive is the arg-max over the whole label set.
  double validation_top1 = 0.0;
  std::string path;
};

struct TrainResult {
  BiEncoder model;
  std::vector<CheckpointRecord> history;
  std::size_t best = 0;
  bool early_stopped = false;
};

using TrainLogger = std::function<void(const CheckpointRecord &)>;

struct ValidationScores {
  double four_way = 0.0;
  double top1 = 0.0;
};

template <typename Real>
ValidationScores EvaluateExamples(const BasicBiEncoder<Real> &model,
                                  std::span<const TrainingExample> examples);

// Throws Error(kEmptyDataset) when `train` is empty.
TrainResult Train(std::span<const TrainingExample> train,
                  std::span<const TrainingExample> validation,
                  const EncoderConfig &config, const SenseInventory &inventory,
                  const TrainOptions &options = {}, const TrainLogger &log = {});

}  // namespace usas

#endif  // USAS_BI_ENCODER_HPP_
