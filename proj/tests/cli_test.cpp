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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "fixtures.hpp"
#include "usas/corpus.hpp"
#include "usas/silver.hpp"
#include "usas/text.hpp"

namespace usas {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int status = -1;
  std::string out;
};

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("usas_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  CliRun Exec(const std::string &args) {
    fs::path log = dir_ / "stdout.txt";
    std::string cmd = std::string(USAS_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
    int raw = std::system(cmd.c_str());
    CliRun r;
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = Slurp(log);
    return r;
  }

  static std::string Slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  static std::string Data(const std::string &rel) { return testing::DataPath(rel); }

  // A rule-tagged corpus of 12 documents over a dozen labels.
  fs::path WriteTaggedCorpus() const {
    const char *tags[] = {"A1", "B1", "C1", "E1", "F1", "G1", "H1", "I1/A1", "Z1mf", "S2", "T1", "W3"};
    fs::path path = dir_ / "tagged.tsv";
    std::ofstream out(path);
    for (std::size_t d = 0; d < 12; ++d) {
      out << "#doc id=doc" << d << "\n";
      for (std::size_t i = 0; i < 6; ++i)
        out << "w" << (d + i) % 9 << "\tw\tNOUN\t" << tags[(d * 5 + i) % 12] << "\n";
      out << ".\t.\tPUNCT\tPUNC\n\n";
    }
    return path;
  }

  std::string RuleArgs() const {
    return " --lexicon " + Data("examples/lexicon.tsv") + " --mwe-lexicon " +
           Data("examples/mwe.tsv");
  }

  fs::path dir_;
};

TEST_F(CliTest, TagWritesRankedColumn) {
  fs::path out = dir_ / "tagged.tsv";
  CliRun r = Exec("tag --mode rule" + RuleArgs() + " --top-k 5 --input " +
               Data("examples/coffee.tsv") + " --output " + out.string());
  ASSERT_EQ(r.status, 0) << r.out;
  Corpus c = LoadCorpus(out.string());
  ASSERT_EQ(c.token_count(), 15u);
  const auto &ocean = c.documents[1].sentences[1].tokens;
  ASSERT_EQ(ocean.size(), 3u);
  EXPECT_EQ(ocean[1].tag_groups, (std::vector<std::string>{"Z2"}));
  EXPECT_EQ(ocean[2].tag_groups, (std::vector<std::string>{"Z2"}));
  for (const auto &d : c.documents)
    for (const auto &s : d.sentences)
      for (const auto &t : s.tokens) {
        EXPECT_GE(t.tag_groups.size(), 1u);
        EXPECT_LE(t.tag_groups.size(), 5u);
      }
}

TEST_F(CliTest, MalformedInputExitsTwo) {
  fs::path bad = dir_ / "bad.tsv";
  std::ofstream(bad) << "token\tonly\n";
  CliRun r = Exec("tag --mode rule" + RuleArgs() + " --input " + bad.string() + " --output " +
               (dir_ / "x.tsv").string());
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.out.find("line 1"), std::string::npos) << r.out;
  EXPECT_EQ(Exec("tag --no-such-flag").status, 2);
}

TEST_F(CliTest, EvaluateReportsStatistics) {
  fs::path jsonl = dir_ / "report.jsonl";
  CliRun r = Exec("evaluate --mode rule" + RuleArgs() + " --inventory " + Data("usas_inventory.tsv") +
               " --gold " + Data("examples/coffee_gold.tsv") + " --n 1,5 --jsonl " +
               jsonl.string());
  ASSERT_EQ(r.status, 0) << r.out;
  std::string lines = Slurp(jsonl);
  EXPECT_EQ(std::count(lines.begin(), lines.end(), '\n'), 2);
  EXPECT_NE(lines.find("\"labelled\":9"), std::string::npos) << lines;
}

TEST_F(CliTest, BuildSilverIsDeterministic) {
  fs::path tagged = WriteTaggedCorpus();
  std::string common = "build-silver --corpus " + tagged.string() + " --inventory " +
                       Data("usas_inventory.tsv") + " --split 75:25 --seed 13 --out-dir ";
  CliRun a = Exec(common + (dir_ / "a").string());
  ASSERT_EQ(a.status, 0) << a.out;
  ASSERT_EQ(Exec(common + (dir_ / "b").string()).status, 0);
  for (const char *f : {"train.jsonl", "validation.jsonl"})
    EXPECT_EQ(Slurp(dir_ / "a" / f), Slurp(dir_ / "b" / f)) << f;

  std::size_t exploded = 0;
  for (const auto &t : ExtractPositives(LoadCorpus(tagged.string()), &testing::UsasInventory()))
    exploded += t.positives.size();
  std::size_t records = LoadSilver((dir_ / "a" / "train.jsonl").string()).size() +
                        LoadSilver((dir_ / "a" / "validation.jsonl").string()).size();
  EXPECT_EQ(records, exploded);
}

TEST_F(CliTest, TrainThenHybridTag) {
  fs::path tagged = WriteTaggedCorpus();
  ASSERT_EQ(Exec("build-silver --corpus " + tagged.string() + " --inventory " +
                 Data("usas_inventory.tsv") + " --split 75:25 --out-dir " + (dir_ / "s").string())
                .status,
            0);
  CliRun t = Exec("train --train " + (dir_ / "s" / "train.jsonl").string() + " --validation " +
               (dir_ / "s" / "validation.jsonl").string() + " --inventory " +
               Data("usas_inventory.tsv") + " --out-dir " + (dir_ / "m").string() +
               " --dim 8 --vocab-size 1024 --epochs 1");
  ASSERT_EQ(t.status, 0) << t.out;
  ASSERT_TRUE(fs::exists(dir_ / "m" / "best.bin"));
  fs::path out = dir_ / "hybrid.tsv";
  CliRun h = Exec("tag --mode hybrid" + RuleArgs() + " --inventory " + Data("usas_inventory.tsv") +
               " --model " + (dir_ / "m" / "best.bin").string() + " --k-backoff 3 --top-k 3" +
               " --input " + Data("examples/coffee.tsv") + " --output " + out.string());
  ASSERT_EQ(h.status, 0) << h.out;
  Corpus c = LoadCorpus(out.string());
  const CorpusToken &willebrand = c.documents[1].sentences[0].tokens[3];
  EXPECT_EQ(willebrand.tag_groups.size(), 3u);
  for (const auto &g : willebrand.tag_groups) EXPECT_NE(g, "Z99");
}

}  // namespace
}  // namespace usas
