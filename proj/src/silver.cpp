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

#include "usas/silver.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <numeric>
#include <set>

#include "json.hpp"

#include "usas/error.hpp"
#include "usas/text.hpp"

namespace usas {

namespace {

constexpr std::size_t kMaxRejections = 1000;

}  // namespace

TagFrequencyTable::TagFrequencyTable(const SenseInventory &inventory) {
  for (const GlossEntry &e : inventory.entries()) labels_.push_back(e.label);
  counts_.assign(labels_.size(), 0);
}

void TagFrequencyTable::Add(const CategoryLabel &label, std::uint64_t n) {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end())
    throw Error(ErrorKind::kUnknownLabel, label.code() + " is not in the inventory");
  counts_[static_cast<std::size_t>(it - labels_.begin())] += n;
  total_ += n;
}

std::uint64_t TagFrequencyTable::count(const CategoryLabel &label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  return it == labels_.end() ? 0 : counts_[static_cast<std::size_t>(it - labels_.begin())];
}

const char *DistributionName(DistributionKind kind) {
  switch (kind) {
    case DistributionKind::kOriginal: return "original";
    case DistributionKind::kInverse: return "inverse";
    case DistributionKind::kLogInverse: return "log_inverse";
  }
  return "?";
}

SamplingDistribution::SamplingDistribution(DistributionKind kind,
                                           std::vector<CategoryLabel> labels,
                                           std::vector<double> weights)
    : kind_(kind), labels_(std::move(labels)), weights_(std::move(weights)) {
  if (labels_.size() != weights_.size())
    throw Error(ErrorKind::kDimensionMismatch, "labels and weights differ in length");
  double sum = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0) || !std::isfinite(w))
      throw Error(ErrorKind::kEmptyTable, "weights must be finite and non-negative");
    sum += w;
  }
  if (sum <= 0.0) throw Error(ErrorKind::kEmptyTable, "all weights are zero");
  double acc = 0.0;
  for (double &w : weights_) {
    w /= sum;
    acc += w;
    cumulative_.push_back(acc);
  }
}

double SamplingDistribution::weight(const CategoryLabel &label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  return it == labels_.end() ? 0.0 : weights_[static_cast<std::size_t>(it - labels_.begin())];
}

std::size_t SamplingDistribution::Draw(Rng &rng) const {
  double x = UniformUnit(rng) * cumulative_.back();
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), x);
  std::size_t i = static_cast<std::size_t>(it - cumulative_.begin());
  // Skip zero-weight labels that share a cumulative value with their
  // predecessor; only reachable through rounding at the top end.
  if (i >= labels_.size()) i = labels_.size() - 1;
  while (weights_[i] == 0.0 && i > 0) --i;
  return i;
}

std::size_t SamplingDistribution::DrawExcluding(Rng &rng,
                                                const std::vector<bool> &excluded) const {
  double mass = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i)
    if (!excluded[i]) mass += weights_[i];
  if (mass <= 0.0) return labels_.size();
  double x = UniformUnit(rng) * mass;
  std::size_t last = labels_.size();
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (excluded[i] || weights_[i] == 0.0) continue;
    last = i;
    if (x < weights_[i]) return i;
    x -= weights_[i];
  }
  return last;
}

DistributionSet BuildDistributions(const TagFrequencyTable &freq) {
  if (freq.total() == 0) throw Error(ErrorKind::kEmptyTable, "no label occurrences");
  const auto &counts = freq.counts();
  const double total = static_cast<double>(freq.total());
  std::vector<double> original(counts.size(), 0.0), inverse(counts.size(), 0.0),
      log_inverse(counts.size(), 0.0);
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] == 0) continue;
    double c = static_cast<double>(counts[i]);
    original[i] = c / total;
    inverse[i] = 1.0 / c;
    log_inverse[i] = std::log2(1.0 + total / c);
  }
  return {SamplingDistribution(DistributionKind::kOriginal, freq.labels(), original),
          SamplingDistribution(DistributionKind::kInverse, freq.labels(), inverse),
          SamplingDistribution(DistributionKind::kLogInverse, freq.labels(), log_inverse)};
}

std::array<CategoryLabel, 3> SampleNegatives(const std::vector<CategoryLabel> &positives,
                                             const DistributionSet &dists, Rng &rng) {
  const auto &labels = dists[0].labels();
  std::vector<bool> excluded(labels.size(), false);
  for (const CategoryLabel &p : positives) {
    auto it = std::find(labels.begin(), labels.end(), p);
    if (it != labels.end()) excluded[static_cast<std::size_t>(it - labels.begin())] = true;
  }
  std::size_t available = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    bool supported = false;
    for (const auto &d : dists) supported = supported || d.weights()[i] > 0.0;
    if (supported && !excluded[i]) ++available;
  }
  if (available < 3)
    throw Error(ErrorKind::kInsufficientLabels,
                "only " + std::to_string(available) + " labels outside the positives");

  std::array<CategoryLabel, 3> out;
  for (std::size_t k = 0; k < 3; ++k) {
    std::size_t pick = labels.size();
    for (std::size_t attempt = 0; attempt < kMaxRejections; ++attempt) {
      std::size_t i = dists[k].Draw(rng);
      if (!excluded[i]) {
        pick = i;
        break;
      }
    }
    // Mass almost entirely on excluded labels: sample the conditional
    // distribution directly, falling back to the other distributions if
    // this one has nothing left.
    for (std::size_t j = 0; pick == labels.size() && j < 3; ++j)
      pick = dists[(k + j) % 3].DrawExcluding(rng, excluded);
    if (pick == labels.size())
      throw Error(ErrorKind::kInsufficientLabels, "no label left to sample");
    excluded[pick] = true;
    out[k] = labels[pick];
  }
  return out;
}

std::vector<PositiveTarget> ExtractPositives(const Corpus &corpus,
                                             const SenseInventory *inventory) {
  std::vector<PositiveTarget> out;
  for (const Document &doc : corpus.documents) {
    for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
      const CorpusSentence &sentence = doc.sentences[s];
      std::vector<std::string> words;
      for (const CorpusToken &t : sentence.tokens) words.push_back(t.text);
      for (std::size_t i = 0; i < sentence.tokens.size(); ++i) {
        const CorpusToken &tok = sentence.tokens[i];
        std::vector<CategoryLabel> positives;
        for (const std::string &group : tok.tag_groups) {
          if (IsPunctuationMarker(group)) continue;
          ParsedTag tag;
          try {
            tag = ParseTag(group);
          } catch (const Error &e) {
            throw Error(ErrorKind::kMalformedTag, e.what(), tok.line);
          }
          if (IsDiscardable(tag)) continue;
          for (const CategoryLabel &label : SplitMembership(tag)) {
            if (inventory && !inventory->Contains(label)) continue;
            if (std::find(positives.begin(), positives.end(), label) == positives.end())
              positives.push_back(label);
          }
        }
        if (positives.empty()) continue;
        out.push_back(PositiveTarget{doc.id, s, words, i, std::move(positives)});
      }
    }
  }
  return out;
}

SplitSpec SplitSpec::Parse(std::string_view ratio, Unit unit) {
  auto parts = Split(ratio, ':');
  auto number = [&](const std::string &s) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || v < 0.0)
      throw Error(ErrorKind::kMalformedInput, "bad split ratio '" + std::string(ratio) + "'");
    return v;
  };
  if (parts.size() != 2)
    throw Error(ErrorKind::kMalformedInput, "split must look like 95:5");
  double train = number(parts[0]);
  double validation = number(parts[1]);
  if (train + validation <= 0.0)
    throw Error(ErrorKind::kMalformedInput, "split ratio sums to zero");
  return SplitSpec{unit, train / (train + validation)};
}

SilverDataset MakeDataset(const Corpus &corpus, const SenseInventory &inventory,
                          const SplitSpec &split, std::uint64_t seed) {
  if (corpus.token_count() == 0) throw Error(ErrorKind::kEmptyCorpus, "corpus has no tokens");

  // Unit key: document index, or (document, sentence) for sentence splits.
  std::vector<std::pair<std::size_t, std::size_t>> units;
  for (std::size_t d = 0; d < corpus.documents.size(); ++d) {
    if (split.unit == SplitSpec::Unit::kDocument) {
      units.emplace_back(d, 0);
    } else {
      for (std::size_t s = 0; s < corpus.documents[d].sentences.size(); ++s)
        units.emplace_back(d, s);
    }
  }
  Rng split_rng(DeriveSeed(seed, "split"));
  std::vector<std::size_t> order(units.size());
  std::iota(order.begin(), order.end(), 0);
  Shuffle(order, split_rng);
  auto n_train = static_cast<std::size_t>(
      std::llround(split.train_fraction * static_cast<double>(units.size())));
  std::set<std::pair<std::size_t, std::size_t>> train_units;
  for (std::size_t i = 0; i < n_train && i < order.size(); ++i)
    train_units.insert(units[order[i]]);

  std::map<std::string, std::size_t> doc_index;
  for (std::size_t d = 0; d < corpus.documents.size(); ++d)
    doc_index.try_emplace(corpus.documents[d].id, d);

  std::vector<PositiveTarget> targets = ExtractPositives(corpus, &inventory);
  auto in_train = [&](const PositiveTarget &t) {
    std::size_t d = doc_index.at(t.doc_id);
    std::size_t s = split.unit == SplitSpec::Unit::kDocument ? 0 : t.sentence;
    return train_units.count({d, s}) > 0;
  };

  SilverDataset data{{}, {}, TagFrequencyTable(inventory), {}, {}};
  for (const PositiveTarget &t : targets)
    if (in_train(t))
      for (const CategoryLabel &p : t.positives) data.frequencies.Add(p);
  if (data.frequencies.total() == 0)
    throw Error(ErrorKind::kEmptyCorpus, "the train split has no labelled tokens");
  data.distributions = BuildDistributions(data.frequencies);

  std::map<std::string, Rng> streams;
  for (const PositiveTarget &t : targets) {
    auto it = streams.find(t.doc_id);
    if (it == streams.end())
      it = streams.emplace(t.doc_id, Rng(DeriveSeed(seed, t.doc_id))).first;
    auto &dst = in_train(t) ? data.train : data.validation;
    for (const CategoryLabel &p : t.positives) {
      SilverRecord rec;
      rec.doc_id = t.doc_id;
      rec.example.tokens = t.tokens;
      rec.example.target = t.target;
      rec.example.positive = p;
      rec.example.negatives = SampleNegatives(t.positives, data.distributions, it->second);
      dst.push_back(std::move(rec));
    }
  }
  if (data.validation.empty())
    data.warnings.push_back("validation split is empty");
  return data;
}

std::vector<TrainingExample> Examples(const std::vector<SilverRecord> &records) {
  std::vector<TrainingExample> out;
  out.reserve(records.size());
  for (const SilverRecord &r : records) out.push_back(r.example);
  return out;
}

void WriteSilver(std::ostream &out, const std::vector<SilverRecord> &records) {
  for (const SilverRecord &r : records) {
    nlohmann::ordered_json j;
    j["doc"] = r.doc_id;
    j["tokens"] = r.example.tokens;
    j["target"] = r.example.target;
    j["positive"] = r.example.positive.code();
    nlohmann::ordered_json neg;
    neg["original"] = r.example.negatives[0].code();
    neg["inverse"] = r.example.negatives[1].code();
    neg["log_inverse"] = r.example.negatives[2].code();
    j["negatives"] = std::move(neg);
    out << j.dump() << '\n';
  }
}

std::vector<SilverRecord> ReadSilver(std::istream &in) {
  std::vector<SilverRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    try {
      nlohmann::json j = nlohmann::json::parse(line);
      SilverRecord r;
      r.doc_id = j.at("doc").get<std::string>();
      r.example.tokens = j.at("tokens").get<std::vector<std::string>>();
      r.example.target = j.at("target").get<std::size_t>();
      r.example.positive = CategoryLabel(j.at("positive").get<std::string>());
      const auto &neg = j.at("negatives");
      r.example.negatives = {CategoryLabel(neg.at("original").get<std::string>()),
                             CategoryLabel(neg.at("inverse").get<std::string>()),
                             CategoryLabel(neg.at("log_inverse").get<std::string>())};
      ValidateExample(r.example);
      out.push_back(std::move(r));
    } catch (const nlohmann::json::exception &e) {
      throw Error(ErrorKind::kSchema, e.what(), line_no);
    } catch (const Error &e) {
      throw Error(ErrorKind::kSchema, e.what(), line_no);
    }
  }
  return out;
}

std::vector<SilverRecord> LoadSilver(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path);
  return ReadSilver(in);
}

void WriteDistributionReport(std::ostream &out, const DistributionSet &dists, std::size_t n) {
  for (const SamplingDistribution &d : dists) {
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < d.weights().size(); ++i)
      if (d.weights()[i] > 0.0) order.push_back(i);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return d.weights()[a] > d.weights()[b];
    });
    auto line = [&](std::size_t i) {
      out << "  " << std::left << std::setw(8) << d.labels()[i].code() << std::fixed
          << std::setprecision(6) << d.weights()[i] << '\n';
    };
    out << DistributionName(d.kind()) << " (" << order.size() << " labels)\n";
    out << " top:\n";
    for (std::size_t i = 0; i < std::min(n, order.size()); ++i) line(order[i]);
    out << " bottom:\n";
    for (std::size_t i = order.size() > n ? order.size() - n : 0; i < order.size(); ++i)
      line(order[i]);
  }
  out.unsetf(std::ios::fixed);
}

}  // namespace usas
