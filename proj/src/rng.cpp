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

#include "compgame/rng.hpp"

#include <vector>

#include "compgame/errors.hpp"

namespace compgame {

std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
  if (n == 0) throw ArgumentError("uniform_below(0)");
  // Reject the top partial block so every residue is equally likely.
  const std::uint64_t limit = n * ((~std::uint64_t{0}) / n);
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

BitString random_bits(Rng& rng, std::size_t len) {
  std::vector<bool> bits(len);
  std::uint64_t word = 0;
  for (std::size_t i = 0; i < len; ++i) {
    if (i % 64 == 0) word = rng();
    bits[i] = (word >> (63 - i % 64)) & 1u;
  }
  return BitString(std::move(bits), len);
}

}  // namespace compgame
