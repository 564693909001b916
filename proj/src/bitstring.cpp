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

#include "compgame/bitstring.hpp"

#include <algorithm>
#include <ostream>

#include "compgame/errors.hpp"

namespace compgame {

BitString::BitString(std::vector<bool> bits, std::size_t max_len)
    : bits_(std::move(bits)), max_len_(max_len) {
  if (bits_.size() > max_len_) {
    throw ArgumentError("bit string of length " + std::to_string(bits_.size()) +
                        " exceeds max_len " + std::to_string(max_len_));
  }
}

BitString BitString::from_string(std::string_view text, std::size_t max_len) {
  std::vector<bool> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw ArgumentError("not a bit string: '" + std::string(text) + "'");
    }
    bits.push_back(c == '1');
  }
  return BitString(std::move(bits), std::max(max_len, text.size()));
}

BitString BitString::from_uint(std::uint64_t value, std::size_t len) {
  if (len > 64) throw ArgumentError("from_uint supports at most 64 bits");
  std::vector<bool> bits(len);
  for (std::size_t i = 0; i < len; ++i) bits[i] = (value >> (len - 1 - i)) & 1u;
  return BitString(std::move(bits), len);
}

BitString BitString::zeros(std::size_t len) {
  return BitString(std::vector<bool>(len, false), len);
}

BitString BitString::ones(std::size_t len) {
  return BitString(std::vector<bool>(len, true), len);
}

BitString BitString::from_hex(std::string_view hex, std::size_t len) {
  if (hex.size() != (len + 3) / 4) {
    throw ArgumentError("hex digit count does not match length " + std::to_string(len));
  }
  std::vector<bool> bits;
  bits.reserve(hex.size() * 4);
  for (char c : hex) {
    int v;
    if (c >= '0' && c <= '9') {
      v = c - '0';
    } else if (c >= 'a' && c <= 'f') {
      v = c - 'a' + 10;
    } else if (c >= 'A' && c <= 'F') {
      v = c - 'A' + 10;
    } else {
      throw ArgumentError("bad hex digit in '" + std::string(hex) + "'");
    }
    for (int b = 3; b >= 0; --b) bits.push_back((v >> b) & 1);
  }
  for (std::size_t i = len; i < bits.size(); ++i) {
    if (bits[i]) throw ArgumentError("nonzero padding bits in '" + std::string(hex) + "'");
  }
  bits.resize(len);
  return BitString(std::move(bits), len);
}

BitString BitString::concat(std::span<const BitString> parts) {
  std::vector<bool> bits;
  for (const auto& p : parts) bits.insert(bits.end(), p.bits_.begin(), p.bits_.end());
  const std::size_t n = bits.size();
  return BitString(std::move(bits), n);
}

void BitString::push_back(bool bit) {
  if (bits_.size() >= max_len_) {
    throw ArgumentError("bit string is full (max_len " + std::to_string(max_len_) + ")");
  }
  bits_.push_back(bit);
}

void BitString::append(const BitString& other) {
  if (bits_.size() + other.size() > max_len_) {
    throw ArgumentError("append exceeds max_len " + std::to_string(max_len_));
  }
  bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
}

std::uint64_t BitString::to_uint64() const {
  if (bits_.size() > 64) throw ArgumentError("to_uint64 needs at most 64 bits");
  std::uint64_t v = 0;
  for (bool b : bits_) v = (v << 1) | static_cast<std::uint64_t>(b);
  return v;
}

std::string BitString::to_string() const {
  std::string s;
  s.reserve(bits_.size());
  for (bool b : bits_) s.push_back(b ? '1' : '0');
  return s;
}

std::string BitString::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s;
  for (std::size_t i = 0; i < bits_.size(); i += 4) {
    int v = 0;
    for (std::size_t j = 0; j < 4; ++j) {
      v <<= 1;
      if (i + j < bits_.size() && bits_[i + j]) v |= 1;
    }
    s.push_back(kDigits[v]);
  }
  return s;
}

BitString BitString::slice(std::size_t pos, std::size_t len) const {
  if (pos + len > bits_.size()) throw ArgumentError("slice out of range");
  return BitString(std::vector<bool>(bits_.begin() + static_cast<std::ptrdiff_t>(pos),
                                     bits_.begin() + static_cast<std::ptrdiff_t>(pos + len)),
                   len);
}

std::size_t BitString::count_ones() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true));
}

std::strong_ordering operator<=>(const BitString& a, const BitString& b) {
  if (a.size() != b.size()) return a.size() <=> b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const BitString& s) {
  return os << '"' << s.to_string() << '"';
}

}  // namespace compgame
