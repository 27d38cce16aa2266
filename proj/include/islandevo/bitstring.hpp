/* Copyright 2026 The islandevo Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace islandevo {

class RngStream;

/// Fixed-length bit vector x_0 x_1 ... x_{n-1}, packed little-endian into
/// 64-bit words: x_i lives in word i/64 at bit i%64. Text form prints x_0
/// first. Padding bits above n are always zero.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t n, bool value = false);

  static BitString from_string(std::string_view bits);
  static BitString ones(std::size_t n) { return BitString(n, true); }
  static BitString zeros(std::size_t n) { return BitString(n, false); }
  // Low n bits of `code`, bit i of code -> x_i. n <= 64.
  static BitString from_index(std::uint64_t code, std::size_t n);
  static BitString random(std::size_t n, RngStream& rng);

  std::size_t size() const { return n_; }
  bool empty() const { return n_ == 0; }

  bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  bool operator[](std::size_t i) const { return get(i); }
  void set(std::size_t i, bool v) {
    const std::uint64_t bit = std::uint64_t{1} << (i & 63);
    if (v) {
      words_[i >> 6] |= bit;
    } else {
      words_[i >> 6] &= ~bit;
    }
  }
  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  std::span<const std::uint64_t> words() const { return words_; }

  std::size_t popcount() const;
  // Length of the maximal all-ones prefix.
  std::size_t leading_ones() const;
  bool all_ones() const { return popcount() == n_; }

  // Inverse of from_index; requires size() <= 64.
  std::uint64_t to_index() const;

  BitString slice(std::size_t offset, std::size_t len) const;
  BitString reversed() const;

  BitString& operator^=(const BitString& other);
  friend BitString operator^(BitString a, const BitString& b) { return a ^= b; }

  friend bool operator==(const BitString& a, const BitString& b) {
    return a.n_ == b.n_ && a.words_ == b.words_;
  }

  std::string to_string() const;

 private:
  void clear_padding();

  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

std::size_t hamming_distance(const BitString& a, const BitString& b);

}  // namespace islandevo
