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

#ifndef COMPGAME_OWF_HPP_
#define COMPGAME_OWF_HPP_

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>

#include "compgame/bitstring.hpp"
#include "compgame/rational.hpp"
#include "compgame/rng.hpp"

namespace compgame {

enum class OwfKind { kHashTruncate, kRandomTable };

std::string_view to_string(OwfKind kind);
// "hash_truncate" / "random_table"; throws ArgumentError otherwise.
OwfKind parse_owf_kind(std::string_view text);

// A family f_k : {0,1}^k -> {0,1}^m with m = ceil(k^b).
//
//   hash_truncate  SHA-256 in counter mode over (domain tag, k, counter, x),
//                  truncated to m bits. k is part of the input, so f_k and
//                  f_k' are unrelated.
//   random_table   a seeded uniformly random permutation of {0,1}^k built by
//                  Fisher-Yates on mt19937_64 (k <= 24). For m > k the
//                  permuted value is extended with seeded pseudorandom bits,
//                  for m < k it is truncated.
//
// Copies share the lazily built tables. Evaluation is thread safe.
class OwfInstance {
 public:
  static constexpr std::size_t kMaxTableKeyLen = 24;
  static constexpr std::size_t kMaxHashKeyLen = 1u << 16;

  static OwfInstance hash_truncate(Rational output_len_exponent = 1);
  static OwfInstance random_table(std::uint64_t seed, Rational output_len_exponent = 1);

  OwfKind kind() const { return kind_; }
  const Rational& output_len_exponent() const { return exponent_; }
  std::uint64_t seed() const { return seed_; }

  // Largest supported key length.
  std::size_t max_key_len() const;
  bool supports(std::size_t k) const { return k >= 1 && k <= max_key_len(); }
  // m = ceil(k^b), exactly.
  std::size_t output_len(std::size_t k) const;

  // f_k(x) with k = |x|. Throws ArgumentError for unsupported k.
  BitString eval(const BitString& x) const;
  // Same value packed MSB-first into the low m bits; needs k, m <= 64.
  std::uint64_t eval_packed(std::size_t k, std::uint64_t x) const;

  // A copy whose evaluations (eval and eval_packed) are counted in `counter`.
  OwfInstance instrumented(std::shared_ptr<std::atomic<std::uint64_t>> counter) const;

  // Identity of the function family (ignores instrumentation).
  bool same_function(const OwfInstance& other) const;

 private:
  struct TableStore;

  OwfInstance(OwfKind kind, std::uint64_t seed, Rational exponent);
  void count() const;
  std::uint64_t table_value(std::size_t k, std::uint64_t x) const;

  OwfKind kind_;
  std::uint64_t seed_ = 0;
  Rational exponent_;
  std::shared_ptr<TableStore> tables_;
  std::shared_ptr<std::atomic<std::uint64_t>> counter_;
};

// Security of an OWF against a bounded inverter: s(k) = 2^(k * s_exponent),
// t(k) = 2^(k * t_exponent), with 0 < t_exponent < s_exponent < 1.
struct OwfSecuritySpec {
  Rational s_exponent{1, 10};
  Rational t_exponent{1, 30};

  void validate() const;
  double security(std::size_t k) const;
  double inverter_budget(std::size_t k) const;
};

BitString owf_eval(const OwfInstance& inst, const BitString& x);

struct Puzzle {
  BitString image;
  BitString secret;
};

// secret uniform on {0,1}^k, image = f_k(secret).
Puzzle sample_puzzle(const OwfInstance& inst, std::size_t k, std::uint64_t rng_seed);
Puzzle sample_puzzle(const OwfInstance& inst, std::size_t k, Rng& rng);

// f_k(z) == image. Throws ArgumentError unless |z| == k.
bool check_inverts(const OwfInstance& inst, const BitString& image,
                   const BitString& z, std::size_t k);

// Fraction of `trials` fresh puzzles that exhaustive search over the first
// `inverter_budget` strings of {0,1}^k (lexicographic from 0^k) inverts.
// random_table only.
double measure_security(const OwfInstance& inst, std::size_t k,
                        std::uint64_t inverter_budget, std::size_t trials,
                        std::uint64_t seed);

}  // namespace compgame

#endif  // COMPGAME_OWF_HPP_
