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

#ifndef USAS_TOKEN_HPP_
#define USAS_TOKEN_HPP_

#include <cstddef>
#include <string>
#include <vector>

namespace usas {

// One token of a sentence as supplied by an upstream lemmatiser and POS
// tagger. `index` is the position within the sentence, starting at 0.
struct InputToken {
  std::string text;
  std::string lemma;
  std::string pos;
  std::size_t index = 0;
};

using Sentence = std::vector<InputToken>;

}  // namespace usas

#endif  // USAS_TOKEN_HPP_
