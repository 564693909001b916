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

#ifndef COMPGAME_BITSTRING_HPP_
#define COMPGAME_BITSTRING_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace compgame {

// A finite bit sequence with an explicit maximum length. This is the carrier
// for every action and type in every game.
//
// Equality and ordering look at the bits only (max_len is a capacity bound,
// not part of the value); "01" != "010". Ordering is shortlex: shorter
// strings first, then lexicographic, so the k-bit strings are ordered like
// the integers 0 .. 2^k - 1 they encode MSB-first.
class BitString {
 public:
  static constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();

  BitString() = default;
  explicit BitString(std::size_t max_len) : max_len_(max_len) {}
  BitString(std::vector<bool> bits, std::size_t max_len);

  // "0110" -> 4 bits. max_len defaults to the string's own length.
  static BitString from_string(std::string_view text, std::size_t max_len = 0);
  // The `len` low bits of `value`, most significant first.
  static BitString from_uint(std::uint64_t value, std::size_t len);
  static BitString zeros(std::size_t len);
  static BitString ones(std::size_t len);
  // Inverse of to_hex(): bits packed MSB-first, zero padded to a nibble.
  static BitString from_hex(std::string_view hex, std::size_t len);
  static BitString concat(std::span<const BitString> parts);

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  std::size_t max_len() const { return max_len_; }
  bool operator[](std::size_t i) const { return bits_[i]; }
  const std::vector<bool>& bits() const { return bits_; }

  // Throws ArgumentError when the string is already at max_len.
  void push_back(bool bit);
  void append(const BitString& other);

  // Requires size() <= 64.
  std::uint64_t to_uint64() const;
  std::string to_string() const;
  std::string to_hex() const;
  BitString slice(std::size_t pos, std::size_t len) const;
  std::size_t count_ones() const;

  friend bool operator==(const BitString& a, const BitString& b) {
    return a.bits_ == b.bits_;
  }
  friend std::strong_ordering operator<=>(const BitString& a, const BitString& b);

 private:
  std::vector<bool> bits_;
  std::size_t max_len_ = 0;
};

std::ostream& operator<<(std::ostream& os, const BitString& s);

struct BitStringHash {
  std::size_t operator()(const BitString& s) const {
    return std::hash<std::vector<bool>>{}(s.bits());
  }
};

}  // namespace compgame

#endif  // COMPGAME_BITSTRING_HPP_
