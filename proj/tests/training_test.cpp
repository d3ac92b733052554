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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "usas/bi_encoder.hpp"
#include "usas/error.hpp"

namespace usas {
namespace {

using testing::MakeSeparableCorpus;

EncoderConfig ToyConfig(std::uint64_t seed) {
  EncoderConfig c;
  c.dim = 32;
  c.vocab_size = 4096;
  c.window = 2;
  c.seed = seed;
  return c;
}

std::string Bytes(const BiEncoder &m) {
  std::ostringstream out;
  m.Save(out);
  return out.str();
}

std::string ReadFile(const std::filesystem::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(Train, EmptyDatasetThrows) {
  SenseInventory inv = testing::SyntheticInventory(4);
  try {
    Train({}, {}, ToyConfig(1), inv);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::kEmptyDataset);
  }
}

TEST(Train, ZeroLearningRateLeavesParameters) {
  auto data = MakeSeparableCorpus(6, 120, 100, 5);
  EncoderConfig c = ToyConfig(3);
  c.learning_rate = 0.0;
  TrainResult r = Train(data.train, data.validation, c, data.inventory, {1, 3, 5, ""});
  BiEncoder fresh(c, data.inventory);
  EXPECT_EQ(Bytes(r.model), Bytes(fresh));
}

TEST(Train, CheckpointCadence) {
  auto data = MakeSeparableCorpus(6, 230, 200, 5);
  EncoderConfig c = ToyConfig(3);
  c.batch_size = 16;
  TrainOptions opt{2, 100, 5, ""};
  TrainResult r = Train(data.train, data.validation, c, data.inventory, opt);
  ASSERT_EQ(r.history.size(), 10u);
  for (std::size_t i = 0; i < r.history.size(); ++i) {
    EXPECT_EQ(r.history[i].epoch, 1 + i / 5);
    EXPECT_EQ(r.history[i].index, 1 + i % 5);
  }
  EXPECT_EQ(r.history.back().examples_seen, 400u);
  for (const auto &rec : r.history)
    EXPECT_LE(rec.validation_accuracy, r.history[r.best].validation_accuracy);
}

TEST(Train, SameSeedSameCheckpointBytes) {
  auto data = MakeSeparableCorpus(8, 400, 320, 21);
  auto tmp = std::filesystem::temp_directory_path() / "usas_train_determinism";
  std::filesystem::remove_all(tmp);
  TrainOptions a{2, 3, 5, (tmp / "a").string()};
  TrainOptions b{2, 3, 5, (tmp / "b").string()};
  TrainResult ra = Train(data.train, data.validation, ToyConfig(17), data.inventory, a);
  TrainResult rb = Train(data.train, data.validation, ToyConfig(17), data.inventory, b);
  ASSERT_EQ(ra.history.size(), rb.history.size());
  for (std::size_t i = 0; i < ra.history.size(); ++i) {
    auto name = std::filesystem::path(ra.history[i].path).filename();
    EXPECT_EQ(ReadFile(tmp / "a" / name), ReadFile(tmp / "b" / name)) << name;
  }
  EXPECT_EQ(ReadFile(tmp / "a" / "best.bin"), ReadFile(tmp / "b" / "best.bin"));
  BiEncoder loaded = BiEncoder::LoadFile((tmp / "a" / "best.bin").string(), data.inventory);
  EXPECT_EQ(Bytes(loaded), Bytes(ra.model));
  TrainResult rc = Train(data.train, data.validation, ToyConfig(18), data.inventory, {});
  EXPECT_NE(Bytes(rc.model), Bytes(ra.model));
  std::filesystem::remove_all(tmp);
}

// The separable corpus is perfectly predictable from the target word, so a
// majority-per-word baseline is near 1 and the encoder should match it.
TEST(Train, LearnsSeparableCorpus) {
  auto data = MakeSeparableCorpus(20, 2000, 1600, 42);
  double baseline = testing::FrequencyBaselineAccuracy(data.train, data.validation);
  EXPECT_GT(baseline, 0.99);
  TrainResult r = Train(data.train, data.validation, ToyConfig(42), data.inventory, {});
  ValidationScores v = EvaluateExamples(r.model, std::span<const TrainingExample>(data.validation));
  EXPECT_GE(v.four_way, 0.99);
  EXPECT_GE(v.top1, 0.95);
  EXPECT_GE(v.top1, baseline - 0.05);
  EXPECT_EQ(v.four_way, r.history[r.best].validation_accuracy);
}

TEST(Train, PatienceStopsEarly) {
  auto data = MakeSeparableCorpus(6, 400, 300, 8);
  EncoderConfig c = ToyConfig(2);
  c.learning_rate = 0.0;
  TrainResult r = Train(data.train, data.validation, c, data.inventory, {3, 2, 5, ""});
  EXPECT_TRUE(r.early_stopped);
  EXPECT_EQ(r.history.size(), 3u);
  EXPECT_EQ(r.best, 0u);
}

}  // namespace
}  // namespace usas
