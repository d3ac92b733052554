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

// Portable deterministic draws on top of std::mt19937_64, whose output
// sequence is fixed by the standard. The standard distributions are not
// used because their algorithms are implementation defined.

#ifndef USAS_RANDOM_HPP_
#define USAS_RANDOM_HPP_

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

namespace usas {

using Rng = std::mt19937_64;

// Uniform in [0, 1) with 53 random bits.
inline double UniformUnit(Rng &rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform in [lo, hi).
inline double UniformReal(Rng &rng, double lo, double hi) {
  return lo + (hi - lo) * UniformUnit(rng);
}

// Uniform in [0, n); n > 0. Rejection sampling removes modulo bias.
inline std::uint64_t UniformIndex(Rng &rng, std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

template <typename T>
void Shuffle(std::vector<T> &v, Rng &rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(UniformIndex(rng, i));
    std::swap(v[i - 1], v[j]);
  }
}

// Seed for an independent stream keyed by (seed, name), e.g. a document id.
std::uint64_t DeriveSeed(std::uint64_t seed, std::string_view name);

}  // namespace usas

#endif  // USAS_RANDOM_HPP_
