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

#include "usas/corpus.hpp"

#include <fstream>

#include "usas/error.hpp"
#include "usas/lexicon.hpp"
#include "usas/text.hpp"

namespace usas {

Sentence CorpusSentence::ToInput() const {
  Sentence out;
  out.reserve(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i)
    out.push_back(InputToken{tokens[i].text, tokens[i].lemma, tokens[i].pos, i});
  return out;
}

std::size_t Corpus::sentence_count() const {
  std::size_t n = 0;
  for (const Document &d : documents) n += d.sentences.size();
  return n;
}

std::size_t Corpus::token_count() const {
  std::size_t n = 0;
  for (const Document &d : documents)
    for (const CorpusSentence &s : d.sentences) n += s.tokens.size();
  return n;
}

std::vector<std::string> ParseTagColumn(std::string_view column) {
  column = Trim(column);
  if (column.empty()) return {};
  if (column.front() != '{') return SplitWhitespace(column);
  std::vector<std::string> groups;
  std::size_t i = 0;
  while (i < column.size()) {
    if (column[i] != '{') {
      ++i;
      continue;
    }
    std::size_t close = column.find('}', i);
    if (close == std::string_view::npos)
      throw Error(ErrorKind::kMalformedInput, "unbalanced '{' in tags column");
    std::string_view group = Trim(column.substr(i + 1, close - i - 1));
    if (!group.empty()) groups.emplace_back(group);
    i = close + 1;
  }
  return groups;
}

Corpus ReadCorpus(std::istream &in, const PosMap *pos_map) {
  Corpus corpus;
  auto current_doc = [&]() -> Document & {
    if (corpus.documents.empty())
      corpus.documents.push_back(Document{"doc-0", {}});
    return corpus.documents.back();
  };
  bool in_sentence = false;
  auto close_sentence = [&] { in_sentence = false; };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty()) {
      close_sentence();
      continue;
    }
    if (line[0] == '#') {
      std::string_view meta = Trim(std::string_view(line).substr(1));
      if (meta.starts_with("doc")) {
        close_sentence();
        std::string id = "doc-" + std::to_string(corpus.documents.size());
        for (const std::string &field : SplitWhitespace(meta.substr(3)))
          if (field.starts_with("id=")) id = field.substr(3);
        corpus.documents.push_back(Document{id, {}});
      }
      continue;
    }
    std::vector<std::string> cols = Split(line, '\t');
    if (cols.size() < 3 || cols.size() > 4)
      throw Error(ErrorKind::kMalformedInput,
                  "expected token<TAB>lemma<TAB>pos[<TAB>tags], got " +
                      std::to_string(cols.size()) + " columns",
                  line_no);
    if (cols[0].empty())
      throw Error(ErrorKind::kMalformedInput, "empty token", line_no);
    CorpusToken tok;
    tok.text = cols[0];
    tok.lemma = cols[1].empty() ? cols[0] : cols[1];
    tok.pos = pos_map ? pos_map->Apply(cols[2]) : cols[2];
    tok.line = line_no;
    if (cols.size() == 4) {
      try {
        tok.tag_groups = ParseTagColumn(cols[3]);
      } catch (const Error &e) {
        throw Error(ErrorKind::kMalformedInput, e.what(), line_no);
      }
    }
    Document &doc = current_doc();
    if (!in_sentence) {
      doc.sentences.emplace_back();
      in_sentence = true;
    }
    doc.sentences.back().tokens.push_back(std::move(tok));
  }
  return corpus;
}

Corpus LoadCorpus(const std::string &path, const PosMap *pos_map) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open corpus " + path);
  return ReadCorpus(in, pos_map);
}

void WriteCorpus(std::ostream &out, const Corpus &corpus) {
  for (const Document &doc : corpus.documents) {
    out << "#doc id=" << doc.id << '\n';
    for (const CorpusSentence &s : doc.sentences) {
      for (const CorpusToken &t : s.tokens) {
        out << t.text << '\t' << t.lemma << '\t' << t.pos;
        if (!t.tag_groups.empty()) out << '\t' << Join(t.tag_groups, " ");
        out << '\n';
      }
      out << '\n';
    }
  }
}

}  // namespace usas
