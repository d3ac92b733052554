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

#include "usas/bi_encoder.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>

#include "usas/error.hpp"
#include "usas/random.hpp"
#include "usas/text.hpp"

namespace usas {

namespace {

constexpr char kMagic[8] = {'U', 'S', 'A', 'S', 'B', 'E', 'M', '1'};

void WriteU32(std::ostream &out, std::uint32_t v) {
  char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(b, 4);
}

void WriteU64(std::ostream &out, std::uint64_t v) {
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(b, 8);
}

void WriteF32(std::ostream &out, float f) {
  std::uint32_t bits;
  static_assert(sizeof(bits) == sizeof(f));
  std::memcpy(&bits, &f, sizeof(bits));
  WriteU32(out, bits);
}

void ReadExact(std::istream &in, char *dst, std::size_t n) {
  in.read(dst, static_cast<std::streamsize>(n));
  if (static_cast<std::size_t>(in.gcount()) != n)
    throw Error(ErrorKind::kSchema, "truncated checkpoint");
}

std::uint32_t ReadU32(std::istream &in) {
  unsigned char b[4];
  ReadExact(in, reinterpret_cast<char *>(b), 4);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
  return v;
}

std::uint64_t ReadU64(std::istream &in) {
  unsigned char b[8];
  ReadExact(in, reinterpret_cast<char *>(b), 8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}

float ReadF32(std::istream &in) {
  std::uint32_t bits = ReadU32(in);
  float f;
  std::memcpy(&f, &bits, sizeof(f));
  return f;
}

double Dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

void Accumulate(std::map<std::uint32_t, std::vector<double>> &rows, std::uint32_t id,
                std::span<const double> v, double scale, std::size_t dim) {
  auto &row = rows[id];
  if (row.empty()) row.assign(dim, 0.0);
  for (std::size_t k = 0; k < dim; ++k) row[k] += scale * v[k];
}

}  // namespace

Vocabulary::Vocabulary(const std::vector<std::vector<std::string>> &gloss_tokens,
                       std::uint32_t vocab_size)
    : vocab_size_(vocab_size) {
  for (const auto &gloss : gloss_tokens)
    for (const std::string &tok : gloss)
      known_.try_emplace(ToLower(tok), static_cast<std::uint32_t>(known_.size()));
  if (vocab_size_ <= known_.size())
    throw Error(ErrorKind::kSchema,
                "vocab_size " + std::to_string(vocab_size_) + " must exceed the " +
                    std::to_string(known_.size()) + " gloss tokens");
}

std::uint32_t Vocabulary::Id(std::string_view token) const {
  std::string key = ToLower(token);
  auto it = known_.find(key);
  if (it != known_.end()) return it->second;
  std::uint32_t band = vocab_size_ - reserved();
  return reserved() + static_cast<std::uint32_t>(Fnv1a(key) % band);
}

void ValidateExample(const TrainingExample &example) {
  if (example.target >= example.tokens.size())
    throw Error(ErrorKind::kMalformedInput, "target index out of range");
  for (std::size_t a = 0; a < 3; ++a) {
    if (example.negatives[a] == example.positive)
      throw Error(ErrorKind::kMalformedInput,
                  "negative " + example.positive.code() + " equals the positive");
    for (std::size_t b = a + 1; b < 3; ++b)
      if (example.negatives[a] == example.negatives[b])
        throw Error(ErrorKind::kMalformedInput,
                    "repeated negative " + example.negatives[a].code());
  }
}

void SparseGradient::Add(const SparseGradient &other, double scale) {
  for (const auto &[id, row] : other.target) Accumulate(target, id, row, scale, row.size());
  for (const auto &[id, row] : other.context) Accumulate(context, id, row, scale, row.size());
}

double CandidateCrossEntropy(std::span<const double> scores) {
  double mx = *std::max_element(scores.begin(), scores.end());
  double sum = 0.0;
  for (double s : scores) sum += std::exp(s - mx);
  return std::log(sum) - (scores[0] - mx);
}

GlossMatrix::GlossMatrix(std::vector<CategoryLabel> labels, std::size_t dim,
                         std::vector<double> rows)
    : labels_(std::move(labels)), dim_(dim), rows_(std::move(rows)) {
  if (rows_.size() != labels_.size() * dim_)
    throw Error(ErrorKind::kDimensionMismatch, "gloss matrix shape");
}

std::vector<double> GlossMatrix::Score(std::span<const double> u) const {
  if (u.size() != dim_)
    throw Error(ErrorKind::kDimensionMismatch,
                "context has " + std::to_string(u.size()) + " dims, glosses " +
                    std::to_string(dim_));
  std::vector<double> out(labels_.size());
  for (std::size_t n = 0; n < labels_.size(); ++n) out[n] = Dot(u, row(n));
  return out;
}

std::vector<std::pair<CategoryLabel, double>> GlossMatrix::TopK(std::span<const double> u,
                                                                std::size_t k) const {
  if (k < 1 || k > labels_.size())
    throw Error(ErrorKind::kIndexOutOfRange,
                "k=" + std::to_string(k) + " outside [1, " + std::to_string(labels_.size()) + "]");
  std::vector<double> scores = Score(u);
  std::vector<std::size_t> order(labels_.size());
  std::iota(order.begin(), order.end(), 0);
  auto better = [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return labels_[a].code() < labels_[b].code();
  };
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                    better);
  std::vector<std::pair<CategoryLabel, double>> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.emplace_back(labels_[order[i]], scores[order[i]]);
  return out;
}

template <typename Real>
BasicBiEncoder<Real>::BasicBiEncoder(const EncoderConfig &config,
                                     const SenseInventory &inventory,
                                     std::vector<CategoryLabel> labels)
    : config_(config), labels_(std::move(labels)) {
  if (config_.dim < 1) throw Error(ErrorKind::kSchema, "dim must be >= 1");
  if (labels_.empty()) throw Error(ErrorKind::kSchema, "empty label set");
  std::vector<std::vector<std::string>> glosses;
  for (std::size_t n = 0; n < labels_.size(); ++n) {
    const GlossEntry *entry = inventory.Find(labels_[n]);
    if (!entry)
      throw Error(ErrorKind::kUnknownLabel, labels_[n].code() + " is not in the inventory");
    if (entry->gloss_tokens.empty()) throw Error(ErrorKind::kEmptyGloss, labels_[n].code());
    if (!label_index_.emplace(labels_[n].code(), n).second)
      throw Error(ErrorKind::kDuplicateLabel, labels_[n].code());
    glosses.push_back(entry->gloss_tokens);
  }
  vocab_ = Vocabulary(glosses, config_.vocab_size);
  for (const auto &gloss : glosses) {
    std::vector<std::uint32_t> ids;
    for (const std::string &tok : gloss) ids.push_back(vocab_.Id(tok));
    gloss_ids_.push_back(std::move(ids));
  }
  std::size_t cells = static_cast<std::size_t>(config_.vocab_size) * config_.dim;
  target_.assign(cells, Real(0));
  context_.assign(cells, Real(0));
}

template <typename Real>
BasicBiEncoder<Real>::BasicBiEncoder(const EncoderConfig &config,
                                     const SenseInventory &inventory)
    : BasicBiEncoder(config, inventory, [&] {
        std::vector<CategoryLabel> labels;
        for (const GlossEntry &e : inventory.entries()) labels.push_back(e.label);
        return labels;
      }()) {
  Rng rng(config_.seed);
  const double r = config_.init_range;
  for (Real &x : target_) x = static_cast<Real>(UniformReal(rng, -r, r));
  for (Real &x : context_) x = static_cast<Real>(UniformReal(rng, -r, r));
}

template <typename Real>
std::optional<std::size_t> BasicBiEncoder<Real>::LabelIndex(const CategoryLabel &label) const {
  auto it = label_index_.find(label.code());
  if (it == label_index_.end()) return std::nullopt;
  return it->second;
}

template <typename Real>
std::vector<double> BasicBiEncoder<Real>::EncodeContext(std::span<const std::string> tokens,
                                                        std::size_t target_index) const {
  std::vector<std::uint32_t> ids;
  ids.reserve(tokens.size());
  for (const std::string &t : tokens) ids.push_back(vocab_.Id(t));
  return EncodeContextIds(ids, target_index);
}

template <typename Real>
std::vector<double> BasicBiEncoder<Real>::EncodeContextIds(std::span<const std::uint32_t> ids,
                                                           std::size_t target_index) const {
  if (target_index >= ids.size())
    throw Error(ErrorKind::kIndexOutOfRange,
                "target " + std::to_string(target_index) + " in a sentence of " +
                    std::to_string(ids.size()));
  const std::size_t d = config_.dim;
  std::vector<double> u(d);
  const Real *t = &target_[static_cast<std::size_t>(ids[target_index]) * d];
  for (std::size_t k = 0; k < d; ++k) u[k] = t[k];

  std::size_t lo = target_index >= config_.window ? target_index - config_.window : 0;
  std::size_t hi = std::min(ids.size() - 1, target_index + config_.window);
  std::size_t count = hi - lo;  // excludes the target itself
  if (count == 0) return u;
  std::vector<double> mix(d, 0.0);
  for (std::size_t i = lo; i <= hi; ++i) {
    if (i == target_index) continue;
    const Real *c = &context_[static_cast<std::size_t>(ids[i]) * d];
    for (std::size_t k = 0; k < d; ++k) mix[k] += c[k];
  }
  for (std::size_t k = 0; k < d; ++k) u[k] += mix[k] / static_cast<double>(count);
  return u;
}

template <typename Real>
std::vector<double> BasicBiEncoder<Real>::GlossRow(std::size_t label) const {
  const std::size_t d = config_.dim;
  const auto &ids = gloss_ids_.at(label);
  if (ids.empty()) throw Error(ErrorKind::kEmptyGloss, labels_[label].code());
  std::vector<double> row(d, 0.0);
  for (std::uint32_t id : ids) {
    const Real *t = &target_[static_cast<std::size_t>(id) * d];
    for (std::size_t k = 0; k < d; ++k) row[k] += t[k];
  }
  for (double &x : row) x /= static_cast<double>(ids.size());
  return row;
}

template <typename Real>
GlossMatrix BasicBiEncoder<Real>::BuildGlossMatrix() const {
  std::vector<double> rows;
  rows.reserve(labels_.size() * config_.dim);
  for (std::size_t n = 0; n < labels_.size(); ++n) {
    std::vector<double> r = GlossRow(n);
    rows.insert(rows.end(), r.begin(), r.end());
  }
  return GlossMatrix(labels_, config_.dim, std::move(rows));
}

template <typename Real>
EncodedExample BasicBiEncoder<Real>::Encode(const TrainingExample &example) const {
  ValidateExample(example);
  EncodedExample out;
  out.target = example.target;
  for (const std::string &t : example.tokens) out.token_ids.push_back(vocab_.Id(t));
  auto resolve = [&](const CategoryLabel &label) {
    auto index = LabelIndex(label);
    if (!index) throw Error(ErrorKind::kUnknownLabel, label.code() + " is not a model label");
    return *index;
  };
  out.candidates[0] = resolve(example.positive);
  for (std::size_t q = 0; q < 3; ++q) out.candidates[q + 1] = resolve(example.negatives[q]);
  return out;
}

template <typename Real>
LossResult BasicBiEncoder<Real>::Loss(const EncodedExample &example) const {
  const std::size_t d = config_.dim;
  const auto &ids = example.token_ids;
  std::vector<double> u = EncodeContextIds(ids, example.target);
  std::array<std::vector<double>, 4> gloss;
  LossResult result;
  for (std::size_t q = 0; q < 4; ++q) {
    gloss[q] = GlossRow(example.candidates[q]);
    result.scores[q] = Dot(u, gloss[q]);
  }
  result.loss = CandidateCrossEntropy(result.scores);

  // dL/ds_q = softmax(s)_q - [q == positive]
  double mx = *std::max_element(result.scores.begin(), result.scores.end());
  std::array<double, 4> g{};
  double z = 0.0;
  for (std::size_t q = 0; q < 4; ++q) z += (g[q] = std::exp(result.scores[q] - mx));
  for (std::size_t q = 0; q < 4; ++q) g[q] /= z;
  g[0] -= 1.0;

  std::vector<double> du(d, 0.0);
  for (std::size_t q = 0; q < 4; ++q)
    for (std::size_t k = 0; k < d; ++k) du[k] += g[q] * gloss[q][k];

  SparseGradient &grad = result.gradient;
  Accumulate(grad.target, ids[example.target], du, 1.0, d);
  std::size_t lo = example.target >= config_.window ? example.target - config_.window : 0;
  std::size_t hi = std::min(ids.size() - 1, example.target + config_.window);
  std::size_t count = hi - lo;
  for (std::size_t i = lo; i <= hi; ++i) {
    if (i == example.target) continue;
    Accumulate(grad.context, ids[i], du, 1.0 / static_cast<double>(count), d);
  }
  for (std::size_t q = 0; q < 4; ++q) {
    const auto &gids = gloss_ids_[example.candidates[q]];
    double scale = g[q] / static_cast<double>(gids.size());
    for (std::uint32_t id : gids) Accumulate(grad.target, id, u, scale, d);
  }
  return result;
}

template <typename Real>
void BasicBiEncoder<Real>::ApplyGradient(const SparseGradient &gradient, double step) {
  const std::size_t d = config_.dim;
  auto apply = [&](std::vector<Real> &table,
                   const std::map<std::uint32_t, std::vector<double>> &rows) {
    for (const auto &[id, row] : rows) {
      Real *p = &table[static_cast<std::size_t>(id) * d];
      for (std::size_t k = 0; k < d; ++k)
        p[k] = static_cast<Real>(static_cast<double>(p[k]) - step * row[k]);
    }
  };
  apply(target_, gradient.target);
  apply(context_, gradient.context);
}

template <typename Real>
void BasicBiEncoder<Real>::Save(std::ostream &out) const {
  out.write(kMagic, sizeof(kMagic));
  WriteU32(out, config_.dim);
  WriteU32(out, config_.vocab_size);
  WriteU32(out, config_.window);
  WriteU64(out, config_.seed);
  for (Real x : target_) WriteF32(out, static_cast<float>(x));
  for (Real x : context_) WriteF32(out, static_cast<float>(x));
  WriteU32(out, static_cast<std::uint32_t>(labels_.size()));
  for (const CategoryLabel &label : labels_) {
    WriteU32(out, static_cast<std::uint32_t>(label.code().size()));
    out.write(label.code().data(), static_cast<std::streamsize>(label.code().size()));
  }
  if (!out) throw Error(ErrorKind::kIo, "checkpoint write failed");
}

template <typename Real>
void BasicBiEncoder<Real>::SaveFile(const std::string &path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path);
  Save(out);
}

template <typename Real>
BasicBiEncoder<Real> BasicBiEncoder<Real>::Load(std::istream &in,
                                                const SenseInventory &inventory) {
  char magic[sizeof(kMagic)];
  ReadExact(in, magic, sizeof(magic));
  if (!std::equal(magic, magic + sizeof(magic), kMagic))
    throw Error(ErrorKind::kSchema, "not a USASBEM1 checkpoint");
  EncoderConfig config;
  config.dim = ReadU32(in);
  config.vocab_size = ReadU32(in);
  config.window = ReadU32(in);
  config.seed = ReadU64(in);
  if (config.dim == 0 || config.vocab_size == 0)
    throw Error(ErrorKind::kSchema, "checkpoint has an empty table");
  std::size_t cells = static_cast<std::size_t>(config.vocab_size) * config.dim;
  std::vector<Real> target(cells), context(cells);
  for (Real &x : target) x = static_cast<Real>(ReadF32(in));
  for (Real &x : context) x = static_cast<Real>(ReadF32(in));
  std::uint32_t count = ReadU32(in);
  std::vector<CategoryLabel> labels;
  for (std::uint32_t n = 0; n < count; ++n) {
    std::uint32_t len = ReadU32(in);
    if (len > 64) throw Error(ErrorKind::kSchema, "label too long");
    std::string code(len, '\0');
    ReadExact(in, code.data(), len);
    auto label = CategoryLabel::TryParse(code);
    if (!label) throw Error(ErrorKind::kSchema, "bad label '" + code + "' in checkpoint");
    labels.push_back(*label);
  }
  BasicBiEncoder model(config, inventory, std::move(labels));
  model.target_ = std::move(target);
  model.context_ = std::move(context);
  return model;
}

template <typename Real>
BasicBiEncoder<Real> BasicBiEncoder<Real>::LoadFile(const std::string &path,
                                                    const SenseInventory &inventory) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open checkpoint " + path);
  return Load(in, inventory);
}

template class BasicBiEncoder<float>;
template class BasicBiEncoder<double>;

template <typename Real>
ValidationScores EvaluateExamples(const BasicBiEncoder<Real> &model,
                                  std::span<const TrainingExample> examples) {
  ValidationScores out;
  if (examples.empty()) return out;
  GlossMatrix glosses = model.BuildGlossMatrix();
  std::size_t four_way = 0, top1 = 0;
  for (const TrainingExample &ex : examples) {
    EncodedExample enc = model.Encode(ex);
    std::vector<double> u = model.EncodeContextIds(enc.token_ids, enc.target);
    std::vector<double> scores = glosses.Score(u);
    double pos = scores[enc.candidates[0]];
    bool wins = true;
    for (std::size_t q = 1; q < 4; ++q) wins = wins && pos > scores[enc.candidates[q]];
    if (wins) ++four_way;
    if (glosses.TopK(u, 1).front().first == ex.positive) ++top1;
  }
  out.four_way = static_cast<double>(four_way) / static_cast<double>(examples.size());
  out.top1 = static_cast<double>(top1) / static_cast<double>(examples.size());
  return out;
}

template ValidationScores EvaluateExamples(const BasicBiEncoder<float> &,
                                           std::span<const TrainingExample>);
template ValidationScores EvaluateExamples(const BasicBiEncoder<double> &,
                                           std::span<const TrainingExample>);

TrainResult Train(std::span<const TrainingExample> train,
                  std::span<const TrainingExample> validation,
                  const EncoderConfig &config, const SenseInventory &inventory,
                  const TrainOptions &options, const TrainLogger &log) {
  if (train.empty()) throw Error(ErrorKind::kEmptyDataset, "no training examples");
  if (config.batch_size == 0) throw Error(ErrorKind::kSchema, "batch_size must be >= 1");
  const std::size_t per_epoch = std::max<std::size_t>(1, options.checkpoints_per_epoch);

  BiEncoder model(config, inventory);
  std::vector<EncodedExample> encoded;
  encoded.reserve(train.size());
  for (const TrainingExample &ex : train) encoded.push_back(model.Encode(ex));
  for (const TrainingExample &ex : validation) model.Encode(ex);

  if (!options.checkpoint_dir.empty())
    std::filesystem::create_directories(options.checkpoint_dir);

  TrainResult result{model, {}, 0, false};
  double best_accuracy = -1.0;
  std::size_t stale = 0;
  Rng rng(DeriveSeed(config.seed, "shuffle"));
  std::vector<std::size_t> order(encoded.size());
  std::iota(order.begin(), order.end(), 0);
  std::size_t seen_total = 0;

  for (std::size_t epoch = 1; epoch <= options.max_epochs; ++epoch) {
    Shuffle(order, rng);
    std::size_t next_checkpoint = 1;
    double loss_sum = 0.0;
    std::size_t loss_count = 0;

    for (std::size_t begin = 0; begin < order.size(); begin += config.batch_size) {
      std::size_t end = std::min(order.size(), begin + config.batch_size);
      SparseGradient batch;
      for (std::size_t i = begin; i < end; ++i) {
        LossResult r = model.Loss(encoded[order[i]]);
        loss_sum += r.loss;
        ++loss_count;
        batch.Add(r.gradient);
      }
      model.ApplyGradient(batch, config.learning_rate / static_cast<double>(end - begin));
      seen_total += end - begin;

      // Checkpoint whenever the batch crosses the next fraction of the epoch.
      bool crossed = false;
      while (next_checkpoint <= per_epoch &&
             end * per_epoch >= next_checkpoint * order.size()) {
        ++next_checkpoint;
        crossed = true;
      }
      if (!crossed) continue;

      CheckpointRecord rec;
      rec.epoch = epoch;
      rec.index = next_checkpoint - 1;
      rec.examples_seen = seen_total;
      rec.mean_loss = loss_count ? loss_sum / static_cast<double>(loss_count) : 0.0;
      ValidationScores v = EvaluateExamples(model, validation);
      rec.validation_accuracy = v.four_way;
      rec.validation_top1 = v.top1;
      if (!options.checkpoint_dir.empty()) {
        rec.path = (std::filesystem::path(options.checkpoint_dir) /
                    ("checkpoint-e" + std::to_string(epoch) + "-" +
                     std::to_string(rec.index) + ".bin"))
                       .string();
        model.SaveFile(rec.path);
      }
      loss_sum = 0.0;
      loss_count = 0;
      result.history.push_back(rec);
      if (log) log(rec);

      // Without a validation split every checkpoint counts as the best.
      if (validation.empty() || rec.validation_accuracy > best_accuracy) {
        best_accuracy = rec.validation_accuracy;
        result.best = result.history.size() - 1;
        result.model = model;
        stale = 0;
      } else if (++stale >= options.patience) {
        result.early_stopped = true;
        break;
      }
    }
    if (result.early_stopped) break;
  }
  if (!options.checkpoint_dir.empty())
    result.model.SaveFile(
        (std::filesystem::path(options.checkpoint_dir) / "best.bin").string());
  return result;
}

}  // namespace usas
