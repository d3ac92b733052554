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

// Vertical corpus format.
//
//   #doc id=coffee-01
//   Coffee<TAB>coffee<TAB>NOUN<TAB>F2/O2[i135.2.1
//   pot<TAB>pot<TAB>NOUN<TAB>F2/O2[i135.2.2
//   <blank line ends the sentence>
//
// The tags column is optional. Several tag groups are separated by
// whitespace; the brace notation "{Z1mf}{Z3c}" is accepted on input.
// Other lines starting with '#' are comments.

#ifndef USAS_CORPUS_HPP_
#define USAS_CORPUS_HPP_

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "usas/token.hpp"

namespace usas {

class PosMap;

struct CorpusToken {
  std::string text;
  std::string lemma;
  std::string pos;
  // Raw tag groups in rank order; empty when the token has no tags column.
  std::vector<std::string> tag_groups;
  std::size_t line = 0;
};

struct CorpusSentence {
  std::vector<CorpusToken> tokens;

  Sentence ToInput() const;
};

struct Document {
  std::string id;
  std::vector<CorpusSentence> sentences;
};

struct Corpus {
  std::vector<Document> documents;

  std::size_t sentence_count() const;
  std::size_t token_count() const;
};

std::vector<std::string> ParseTagColumn(std::string_view column);

// Throws Error(kMalformedInput) with the line number for rows with fewer
// than three or more than four columns. POS values go through `pos_map`
// when given.
Corpus ReadCorpus(std::istream &in, const PosMap *pos_map = nullptr);
Corpus LoadCorpus(const std::string &path, const PosMap *pos_map = nullptr);

void WriteCorpus(std::ostream &out, const Corpus &corpus);

}  // namespace usas

#endif  // USAS_CORPUS_HPP_
