// Copyright 2026 The Compgame Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef COMPGAME_RNG_HPP_
#define COMPGAME_RNG_HPP_

#include <cstddef>
#include <cstdint>
#include <random>

#include "compgame/bitstring.hpp"

namespace compgame {

// std::mt19937_64's output sequence is fixed by the standard, so everything
// seeded through it is reproducible across platforms. The std
// distributions are not, which is why the helpers below only touch raw
// engine output.
using Rng = std::mt19937_64;

// SplitMix64 finalizer; used to derive independent sub-seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(splitmix64(seed) ^ (stream * 0xd1342543de82ef95ULL + 1));
}

// Uniform on [0, n), n >= 1, by rejection.
std::uint64_t uniform_below(Rng& rng, std::uint64_t n);

// Uniform on [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

BitString random_bits(Rng& rng, std::size_t len);

}  // namespace compgame

#endif  // COMPGAME_RNG_HPP_
