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

// usas: rule, neural and hybrid semantic tagging from the command line.
//
//   usas tag --mode rule --lexicon lex.tsv --mwe-lexicon mwe.tsv < in.tsv
//   usas build-silver --corpus tagged.tsv --inventory inv.tsv --out-dir silver
//   usas train --train silver/train.jsonl --validation silver/validation.jsonl ...
//   usas evaluate --gold gold.tsv --mode hybrid ... --n 1,5
//
// Exit codes: 0 success, 1 internal error, 2 input error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "usas/bi_encoder.hpp"
#include "usas/corpus.hpp"
#include "usas/error.hpp"
#include "usas/evaluation.hpp"
#include "usas/hybrid.hpp"
#include "usas/lexicon.hpp"
#include "usas/rule_tagger.hpp"
#include "usas/silver.hpp"
#include "usas/text.hpp"

namespace {

using namespace usas;

struct TaggerOptions {
  std::string mode = "rule";
  std::string lexicon;
  std::string mwe_lexicon;
  std::string inventory;
  std::string model;
  std::string pos_map;
  std::vector<std::string> punct_pos{"PUNCT", "PUNC"};
  std::size_t k_backoff = 5;
};

void AddTaggerOptions(CLI::App *cmd, TaggerOptions &o) {
  cmd->add_option("--mode", o.mode, "Tagger: rule, neural or hybrid")
      ->check(CLI::IsMember({"rule", "neural", "hybrid"}))
      ->capture_default_str();
  cmd->add_option("--lexicon", o.lexicon, "Single-word lexicon TSV (lemma, pos, tags)");
  cmd->add_option("--mwe-lexicon", o.mwe_lexicon, "MWE lexicon TSV (template, tags)");
  cmd->add_option("--inventory", o.inventory, "Gloss inventory TSV (tag, title, description)");
  cmd->add_option("--model", o.model, "Bi-encoder checkpoint (neural and hybrid modes)");
  cmd->add_option("--pos-map", o.pos_map,
                  "from<TAB>to POS mapping applied to lexicons and input corpus");
  cmd->add_option("--punct-pos", o.punct_pos, "POS values treated as punctuation")
      ->capture_default_str();
  cmd->add_option("--k-backoff", o.k_backoff, "Neural candidates emitted on hybrid back-off")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

struct LoadedTagger {
  PosMap pos_map;
  std::shared_ptr<const SenseInventory> inventory;
  std::shared_ptr<const SentenceTagger> tagger;
};

LoadedTagger LoadTagger(const TaggerOptions &o, std::size_t neural_k) {
  LoadedTagger out;
  if (!o.pos_map.empty()) out.pos_map = PosMap::Load(o.pos_map);
  if (!o.inventory.empty())
    out.inventory = std::make_shared<SenseInventory>(SenseInventory::Load(o.inventory));
  std::set<std::string, std::less<>> punct(o.punct_pos.begin(), o.punct_pos.end());

  std::shared_ptr<const RuleTagger> rule;
  if (o.mode != "neural") {
    auto single = std::make_shared<SingleWordLexicon>();
    auto mwe = std::make_shared<MweLexicon>();
    if (!o.lexicon.empty()) *single = SingleWordLexicon::Load(o.lexicon, out.pos_map);
    if (!o.mwe_lexicon.empty()) *mwe = MweLexicon::Load(o.mwe_lexicon, out.pos_map);
    rule = std::make_shared<RuleTagger>(single, mwe, punct);
  }
  std::shared_ptr<const NeuralTagger> neural;
  if (o.mode != "rule") {
    if (o.model.empty() || !out.inventory)
      throw Error(ErrorKind::kMalformedInput, "--mode " + o.mode + " needs --model and --inventory");
    auto model = std::make_shared<BiEncoder>(BiEncoder::LoadFile(o.model, *out.inventory));
    neural = std::make_shared<NeuralTagger>(model, neural_k, punct);
  }
  if (o.mode == "rule")
    out.tagger = rule;
  else if (o.mode == "neural")
    out.tagger = neural;
  else
    out.tagger = std::make_shared<HybridTagger>(rule, neural, HybridConfig{o.k_backoff});
  return out;
}

Corpus ReadInput(const std::string &path, const PosMap &pos_map) {
  const PosMap *map = pos_map.empty() ? nullptr : &pos_map;
  if (path.empty() || path == "-") return ReadCorpus(std::cin, map);
  return LoadCorpus(path, map);
}

std::string ConfigLine(const CLI::App &app, std::uint64_t seed) {
  std::ostringstream hash;
  hash << std::hex << std::setw(16) << std::setfill('0')
       << Fnv1a(app.config_to_str(true, false));
  return "# config " + hash.str() + " seed " + std::to_string(seed);
}

int RunTag(const TaggerOptions &o, std::size_t top_k, const std::string &input,
           const std::string &output) {
  LoadedTagger loaded = LoadTagger(o, top_k);
  Corpus corpus = ReadInput(input, loaded.pos_map);
  for (Document &doc : corpus.documents) {
    for (CorpusSentence &sentence : doc.sentences) {
      std::vector<RankedPrediction> preds = loaded.tagger->TagSentence(sentence.ToInput());
      for (std::size_t i = 0; i < sentence.tokens.size(); ++i)
        sentence.tokens[i].tag_groups = preds[i].TopCores(top_k);
    }
  }
  if (output.empty() || output == "-") {
    WriteCorpus(std::cout, corpus);
  } else {
    std::ofstream out(output);
    if (!out) throw Error(ErrorKind::kIo, "cannot write " + output);
    WriteCorpus(out, corpus);
  }
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Rule, neural and hybrid USAS semantic tagging"};
  app.require_subcommand(1);
  const char *env_config = std::getenv("USAS_CONFIG");
  app.set_config("--config", env_config ? env_config : "", "INI/TOML file with option defaults");

  // tag
  CLI::App *tag = app.add_subcommand("tag", "Tag a vertical corpus");
  TaggerOptions tag_opts;
  std::size_t top_k = 1;
  std::string tag_input, tag_output;
  AddTaggerOptions(tag, tag_opts);
  tag->add_option("--top-k", top_k, "Ranked tags written per token")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  tag->add_option("--input", tag_input, "Corpus (token, lemma, pos); '-' for stdin");
  tag->add_option("--output", tag_output, "Output corpus; '-' for stdout");

  // build-silver
  CLI::App *silver = app.add_subcommand("build-silver", "Build silver training data");
  std::string silver_corpus, silver_inventory, silver_out, split_ratio = "95:5",
                                                            split_unit = "document";
  std::uint64_t silver_seed = 0;
  silver->add_option("--corpus", silver_corpus, "Rule-tagged vertical corpus")->required();
  silver->add_option("--inventory", silver_inventory, "Gloss inventory TSV")->required();
  silver->add_option("--out-dir", silver_out, "Directory for train.jsonl and validation.jsonl")
      ->required();
  silver->add_option("--split", split_ratio, "train:validation ratio")->capture_default_str();
  silver->add_option("--split-unit", split_unit, "Split by document or sentence")
      ->check(CLI::IsMember({"document", "sentence"}))
      ->capture_default_str();
  silver->add_option("--seed", silver_seed, "Random seed")->capture_default_str();

  // train
  CLI::App *train = app.add_subcommand("train", "Train the gloss bi-encoder");
  std::string train_path, validation_path, train_inventory, train_out;
  EncoderConfig enc;
  TrainOptions train_opts;
  train->add_option("--train", train_path, "Silver train JSONL")->required();
  train->add_option("--validation", validation_path, "Silver validation JSONL");
  train->add_option("--inventory", train_inventory, "Gloss inventory TSV")->required();
  train->add_option("--out-dir", train_out, "Checkpoint directory")->required();
  train->add_option("--dim", enc.dim, "Embedding dimension")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  train->add_option("--vocab-size", enc.vocab_size, "Rows per embedding table")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  train->add_option("--window", enc.window, "Context tokens each side")->capture_default_str();
  train->add_option("--seed", enc.seed, "Random seed")->capture_default_str();
  train->add_option("--lr", enc.learning_rate, "Learning rate")->capture_default_str();
  train->add_option("--batch-size", enc.batch_size, "Mini-batch size")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  train->add_option("--epochs", train_opts.max_epochs, "Maximum epochs")->capture_default_str();
  train->add_option("--patience", train_opts.patience,
                    "Checkpoints without validation improvement before stopping")
      ->capture_default_str();

  // evaluate
  CLI::App *evaluate = app.add_subcommand("evaluate", "Top-n accuracy on a gold corpus");
  TaggerOptions eval_opts;
  std::string gold_path, language = "unknown", model_name, jsonl_path;
  std::vector<std::size_t> n_values{1, 5};
  bool unordered = false;
  AddTaggerOptions(evaluate, eval_opts);
  evaluate->add_option("--gold", gold_path, "Gold vertical corpus with tags")->required();
  evaluate->add_option("--n", n_values, "Values of n")->delimiter(',')->capture_default_str();
  evaluate->add_flag("--unordered-membership", unordered,
                     "Compare multi-membership tags as sets");
  evaluate->add_option("--language", language, "Language label for the report");
  evaluate->add_option("--model-name", model_name, "Model label for the report");
  evaluate->add_option("--jsonl", jsonl_path, "Append machine-readable records here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*tag) return RunTag(tag_opts, top_k, tag_input, tag_output);

    if (*silver) {
      SenseInventory inventory = SenseInventory::Load(silver_inventory);
      Corpus corpus = LoadCorpus(silver_corpus);
      SplitSpec spec = SplitSpec::Parse(split_ratio, split_unit == "document"
                                                         ? SplitSpec::Unit::kDocument
                                                         : SplitSpec::Unit::kSentence);
      SilverDataset data = MakeDataset(corpus, inventory, spec, silver_seed);
      std::filesystem::create_directories(silver_out);
      for (const auto &[name, records] :
           {std::pair{"train.jsonl", &data.train}, std::pair{"validation.jsonl", &data.validation}}) {
        std::ofstream out(std::filesystem::path(silver_out) / name);
        if (!out) throw Error(ErrorKind::kIo, std::string("cannot write ") + name);
        WriteSilver(out, *records);
      }
      std::cout << ConfigLine(app, silver_seed) << '\n';
      for (const std::string &w : data.warnings) std::cerr << "warning: " << w << '\n';
      std::cout << "train records: " << data.train.size()
                << "\nvalidation records: " << data.validation.size()
                << "\nlabel occurrences: " << data.frequencies.total() << '\n';
      WriteDistributionReport(std::cout, data.distributions);
      return 0;
    }

    if (*train) {
      SenseInventory inventory = SenseInventory::Load(train_inventory);
      std::vector<TrainingExample> train_set = Examples(LoadSilver(train_path));
      std::vector<TrainingExample> validation_set;
      if (!validation_path.empty()) validation_set = Examples(LoadSilver(validation_path));
      train_opts.checkpoint_dir = train_out;
      std::filesystem::create_directories(train_out);
      std::ofstream log_file(std::filesystem::path(train_out) / "train.log");
      const std::string header = ConfigLine(app, enc.seed);
      std::cout << header << '\n';
      log_file << header << '\n';
      auto log = [&](const CheckpointRecord &r) {
        std::ostringstream line;
        line << "epoch " << r.epoch << " checkpoint " << r.index << " seen " << r.examples_seen
             << " loss " << std::fixed << std::setprecision(6) << r.mean_loss << " val_4way "
             << r.validation_accuracy << " val_top1 " << r.validation_top1;
        std::cout << line.str() << std::endl;
        log_file << line.str() << '\n';
      };
      TrainResult result = Train(train_set, validation_set, enc, inventory, train_opts, log);
      const CheckpointRecord &best = result.history[result.best];
      std::cout << "best: epoch " << best.epoch << " checkpoint " << best.index
                << (result.early_stopped ? " (early stopped)" : "") << " -> "
                << (std::filesystem::path(train_out) / "best.bin").string() << '\n';
      return 0;
    }

    if (*evaluate) {
      LoadedTagger loaded = LoadTagger(eval_opts, *std::max_element(n_values.begin(), n_values.end()));
      Corpus gold = LoadCorpus(gold_path, loaded.pos_map.empty() ? nullptr : &loaded.pos_map);
      EvalReport report = EvaluateRun(
          gold, *loaded.tagger, n_values, loaded.inventory.get(),
          unordered ? MembershipComparison::kUnordered : MembershipComparison::kOrdered);
      std::string name = model_name.empty() ? eval_opts.mode : model_name;
      WriteReportTable(std::cout, report, name, language);
      if (!jsonl_path.empty()) {
        std::ofstream out(jsonl_path, std::ios::app);
        if (!out) throw Error(ErrorKind::kIo, "cannot write " + jsonl_path);
        WriteReportJsonl(out, report, name, language);
      }
      return 0;
    }
  } catch (const Error &e) {
    std::cerr << "usas: " << e.what() << '\n';
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "usas: internal error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
