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

#include "compgame/owf.hpp"

#include <openssl/evp.h>

#include <array>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <mutex>
#include <numeric>
#include <vector>

#include "compgame/errors.hpp"

namespace compgame {

namespace {

constexpr std::string_view kHashDomainTag = "compgame.owf.v1";
constexpr std::size_t kMaxOutputLen = std::size_t{1} << 20;

void put_be32(std::vector<unsigned char>& buf, std::size_t offset, std::uint32_t v) {
  buf[offset] = static_cast<unsigned char>(v >> 24);
  buf[offset + 1] = static_cast<unsigned char>(v >> 16);
  buf[offset + 2] = static_cast<unsigned char>(v >> 8);
  buf[offset + 3] = static_cast<unsigned char>(v);
}

// SHA-256 of (tag || be32(k) || be32(counter) || x packed MSB-first) for
// counter = 0, 1, ... until m bits are produced; calls sink(bit) m times.
template <typename Sink>
void hash_stream(std::size_t k, const std::vector<unsigned char>& packed_x, std::size_t m,
                 Sink&& sink) {
  const std::size_t header = kHashDomainTag.size();
  std::vector<unsigned char> msg(header + 8 + packed_x.size());
  std::copy(kHashDomainTag.begin(), kHashDomainTag.end(), msg.begin());
  put_be32(msg, header, static_cast<std::uint32_t>(k));
  std::copy(packed_x.begin(), packed_x.end(), msg.begin() + header + 8);

  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  std::size_t produced = 0;
  for (std::uint32_t counter = 0; produced < m; ++counter) {
    put_be32(msg, header + 4, counter);
    unsigned int len = 0;
    if (EVP_Digest(msg.data(), msg.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1) {
      throw Error("SHA-256 evaluation failed");
    }
    for (unsigned int i = 0; i < len * 8 && produced < m; ++i, ++produced) {
      sink(((digest[i / 8] >> (7 - i % 8)) & 1U) != 0);
    }
  }
}

std::vector<unsigned char> pack_bits(const BitString& x) {
  std::vector<unsigned char> out((x.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i]) out[i / 8] |= static_cast<unsigned char>(0x80U >> (i % 8));
  }
  return out;
}

std::vector<unsigned char> pack_uint(std::size_t k, std::uint64_t x) {
  std::vector<unsigned char> out((k + 7) / 8, 0);
  for (std::size_t i = 0; i < k; ++i) {
    if ((x >> (k - 1 - i)) & 1U) out[i / 8] |= static_cast<unsigned char>(0x80U >> (i % 8));
  }
  return out;
}

// Extension bit j (0-based) of a random_table image when m > k.
std::uint64_t extension_word(std::uint64_t seed, std::size_t k, std::uint64_t x,
                             std::uint64_t j) {
  const std::uint64_t base = derive_seed(derive_seed(seed, 0x657874U), k);
  return splitmix64(splitmix64(base ^ x) + j);
}

}  // namespace

std::string_view to_string(OwfKind kind) {
  return kind == OwfKind::kHashTruncate ? "hash_truncate" : "random_table";
}

OwfKind parse_owf_kind(std::string_view text) {
  if (text == "hash_truncate") return OwfKind::kHashTruncate;
  if (text == "random_table") return OwfKind::kRandomTable;
  throw ArgumentError("unknown OWF kind '" + std::string(text) + "'");
}

struct OwfInstance::TableStore {
  std::mutex mu;
  std::array<std::shared_ptr<const std::vector<std::uint32_t>>, kMaxTableKeyLen + 1> tables;
  std::array<std::atomic<const std::vector<std::uint32_t>*>, kMaxTableKeyLen + 1> ready{};
};

OwfInstance::OwfInstance(OwfKind kind, std::uint64_t seed, Rational exponent)
    : kind_(kind), seed_(seed), exponent_(std::move(exponent)) {
  if (exponent_.sign() <= 0) throw ArgumentError("output length exponent b must be > 0");
  if (kind_ == OwfKind::kRandomTable) tables_ = std::make_shared<TableStore>();
}

OwfInstance OwfInstance::hash_truncate(Rational output_len_exponent) {
  return OwfInstance(OwfKind::kHashTruncate, 0, std::move(output_len_exponent));
}

OwfInstance OwfInstance::random_table(std::uint64_t seed, Rational output_len_exponent) {
  return OwfInstance(OwfKind::kRandomTable, seed, std::move(output_len_exponent));
}

std::size_t OwfInstance::max_key_len() const {
  return kind_ == OwfKind::kRandomTable ? kMaxTableKeyLen : kMaxHashKeyLen;
}

std::size_t OwfInstance::output_len(std::size_t k) const {
  if (exponent_ == Rational(1)) return k;
  using boost::multiprecision::cpp_int;
  const cpp_int p = boost::multiprecision::numerator(exponent_.backend());
  const cpp_int q = boost::multiprecision::denominator(exponent_.backend());
  const unsigned qu = q.convert_to<unsigned>();
  const cpp_int target = boost::multiprecision::pow(cpp_int(k), p.convert_to<unsigned>());
  double guess = std::ceil(std::pow(static_cast<double>(k), exponent_.to_double()));
  if (!(guess < static_cast<double>(kMaxOutputLen) * 2)) {
    throw ArgumentError("output length for k=" + std::to_string(k) + " is too large");
  }
  auto m = static_cast<std::size_t>(std::max(guess, 1.0));
  while (m > 1 && boost::multiprecision::pow(cpp_int(m - 1), qu) >= target) --m;
  while (boost::multiprecision::pow(cpp_int(m), qu) < target) ++m;
  if (m > kMaxOutputLen) {
    throw ArgumentError("output length for k=" + std::to_string(k) + " is too large");
  }
  return m;
}

void OwfInstance::count() const {
  if (counter_) counter_->fetch_add(1, std::memory_order_relaxed);
}

std::uint64_t OwfInstance::table_value(std::size_t k, std::uint64_t x) const {
  const std::vector<std::uint32_t>* table = tables_->ready[k].load(std::memory_order_acquire);
  if (table == nullptr) {
    std::lock_guard<std::mutex> lock(tables_->mu);
    table = tables_->ready[k].load(std::memory_order_relaxed);
    if (table == nullptr) {
      auto perm = std::make_shared<std::vector<std::uint32_t>>(std::size_t{1} << k);
      std::iota(perm->begin(), perm->end(), 0U);
      Rng rng(derive_seed(seed_, k));
      for (std::size_t i = perm->size() - 1; i > 0; --i) {
        std::swap((*perm)[i], (*perm)[uniform_below(rng, i + 1)]);
      }
      tables_->tables[k] = perm;
      table = perm.get();
      tables_->ready[k].store(table, std::memory_order_release);
    }
  }
  return (*table)[x];
}

BitString OwfInstance::eval(const BitString& x) const {
  const std::size_t k = x.size();
  if (!supports(k)) {
    throw ArgumentError("key length " + std::to_string(k) + " unsupported by " +
                        std::string(to_string(kind_)));
  }
  const std::size_t m = output_len(k);
  if (kind_ == OwfKind::kRandomTable) {
    count();
    const std::uint64_t value = table_value(k, x.to_uint64());
    std::vector<bool> bits;
    bits.reserve(m);
    for (std::size_t i = 0; i < std::min(m, k); ++i) bits.push_back((value >> (k - 1 - i)) & 1U);
    const std::uint64_t xv = x.to_uint64();
    for (std::size_t j = 0; j + k < m; ++j) {
      bits.push_back((extension_word(seed_, k, xv, j / 64) >> (63 - j % 64)) & 1U);
    }
    return BitString(std::move(bits), m);
  }
  count();
  std::vector<bool> bits;
  bits.reserve(m);
  hash_stream(k, pack_bits(x), m, [&](bool b) { bits.push_back(b); });
  return BitString(std::move(bits), m);
}

std::uint64_t OwfInstance::eval_packed(std::size_t k, std::uint64_t x) const {
  if (!supports(k)) {
    throw ArgumentError("key length " + std::to_string(k) + " unsupported by " +
                        std::string(to_string(kind_)));
  }
  const std::size_t m = output_len(k);
  if (k > 64 || m > 64) throw ArgumentError("eval_packed needs k, m <= 64");
  if (k < 64 && (x >> k) != 0) throw ArgumentError("packed key wider than k bits");
  count();
  if (kind_ == OwfKind::kRandomTable) {
    const std::uint64_t value = table_value(k, x);
    if (m <= k) return value >> (k - m);
    const std::size_t extra = m - k;
    const std::uint64_t ext = extension_word(seed_, k, x, 0) >> (64 - extra);
    return (value << extra) | ext;
  }
  std::uint64_t out = 0;
  hash_stream(k, pack_uint(k, x), m, [&](bool b) { out = (out << 1) | (b ? 1U : 0U); });
  return out;
}

OwfInstance OwfInstance::instrumented(
    std::shared_ptr<std::atomic<std::uint64_t>> counter) const {
  OwfInstance copy = *this;
  copy.counter_ = std::move(counter);
  return copy;
}

bool OwfInstance::same_function(const OwfInstance& other) const {
  if (kind_ != other.kind_ || exponent_ != other.exponent_) return false;
  return kind_ == OwfKind::kHashTruncate || seed_ == other.seed_;
}

void OwfSecuritySpec::validate() const {
  const Rational one(1);
  if (t_exponent.sign() <= 0 || !(t_exponent < s_exponent) || !(s_exponent < one)) {
    throw ArgumentError("security exponents need 0 < t_exponent < s_exponent < 1");
  }
}

double OwfSecuritySpec::security(std::size_t k) const {
  return std::exp2(static_cast<double>(k) * s_exponent.to_double());
}

double OwfSecuritySpec::inverter_budget(std::size_t k) const {
  return std::exp2(static_cast<double>(k) * t_exponent.to_double());
}

BitString owf_eval(const OwfInstance& inst, const BitString& x) { return inst.eval(x); }

Puzzle sample_puzzle(const OwfInstance& inst, std::size_t k, Rng& rng) {
  if (k < 1) throw ArgumentError("sample_puzzle needs k >= 1");
  Puzzle p;
  p.secret = random_bits(rng, k);
  p.image = inst.eval(p.secret);
  return p;
}

Puzzle sample_puzzle(const OwfInstance& inst, std::size_t k, std::uint64_t rng_seed) {
  Rng rng(rng_seed);
  return sample_puzzle(inst, k, rng);
}

bool check_inverts(const OwfInstance& inst, const BitString& image, const BitString& z,
                   std::size_t k) {
  if (z.size() != k) {
    throw ArgumentError("candidate has length " + std::to_string(z.size()) + ", expected " +
                        std::to_string(k));
  }
  return inst.eval(z) == image;
}

double measure_security(const OwfInstance& inst, std::size_t k,
                        std::uint64_t inverter_budget, std::size_t trials,
                        std::uint64_t seed) {
  if (inst.kind() != OwfKind::kRandomTable) {
    throw ArgumentError("measure_security supports random_table only");
  }
  if (!inst.supports(k)) throw ArgumentError("unsupported key length");
  if (trials == 0) throw ArgumentError("measure_security needs trials >= 1");
  const std::uint64_t domain = std::uint64_t{1} << k;
  if (inverter_budget > domain) throw ArgumentError("inverter budget exceeds 2^k");
  if (inst.output_len(k) > 64) throw ArgumentError("output length above 64 bits");

  std::size_t wins = 0;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    Rng rng(derive_seed(seed, trial));
    const std::uint64_t secret = uniform_below(rng, domain);
    const std::uint64_t image = inst.eval_packed(k, secret);
    for (std::uint64_t z = 0; z < inverter_budget; ++z) {
      if (inst.eval_packed(k, z) == image) {
        ++wins;
        break;
      }
    }
  }
  return static_cast<double>(wins) / static_cast<double>(trials);
}

}  // namespace compgame
