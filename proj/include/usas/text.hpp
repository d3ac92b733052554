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

#ifndef USAS_TEXT_HPP_
#define USAS_TEXT_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace usas {

// ASCII lowercasing; bytes outside ASCII are copied unchanged so UTF-8
// sequences stay intact.
std::string ToLower(std::string_view s);

std::string_view Trim(std::string_view s);

// Splits on runs of ASCII whitespace, dropping empty pieces.
std::vector<std::string> SplitWhitespace(std::string_view s);

// Splits on a single character, keeping empty pieces.
std::vector<std::string> Split(std::string_view s, char sep);

std::string Join(const std::vector<std::string> &parts, std::string_view sep);

// 64-bit FNV-1a.
std::uint64_t Fnv1a(std::string_view s, std::uint64_t basis = 14695981039346656037ULL);

}  // namespace usas

#endif  // USAS_TEXT_HPP_
