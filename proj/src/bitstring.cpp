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

#include "islandevo/bitstring.hpp"

#include <bit>

#include "islandevo/error.hpp"
#include "islandevo/rng.hpp"
#include "islandevo/simd/kernels.hpp"

namespace islandevo {
namespace {

constexpr std::size_t word_count(std::size_t n) { return (n + 63) / 64; }

// Below this many words the dispatch indirection costs more than it saves.
constexpr std::size_t kKernelMinWords = 8;

}  // namespace

BitString::BitString(std::size_t n, bool value)
    : n_(n), words_(word_count(n), value ? ~std::uint64_t{0} : 0) {
  clear_padding();
}

BitString BitString::from_string(std::string_view bits) {
  BitString out(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      out.set(i, true);
    } else if (bits[i] != '0') {
      throw ConfigError("bit string may contain only '0' and '1': " + std::string(bits));
    }
  }
  return out;
}

BitString BitString::from_index(std::uint64_t code, std::size_t n) {
  if (n > 64) throw ConfigError("from_index supports at most 64 bits");
  BitString out(n);
  if (n > 0) out.words_[0] = code;
  out.clear_padding();
  return out;
}

BitString BitString::random(std::size_t n, RngStream& rng) {
  BitString out(n);
  for (auto& w : out.words_) w = rng.next();
  out.clear_padding();
  return out;
}

std::size_t BitString::popcount() const {
  if (words_.size() >= kKernelMinWords) {
    return static_cast<std::size_t>(simd::active_kernels().popcount(words_.data(), words_.size()));
  }
  std::size_t total = 0;
  for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

std::size_t BitString::leading_ones() const {
  std::size_t count = 0;
  for (auto w : words_) {
    const auto run = static_cast<std::size_t>(std::countr_one(w));
    count += run;
    if (run < 64) break;
  }
  return count < n_ ? count : n_;
}

std::uint64_t BitString::to_index() const {
  if (n_ > 64) throw ConfigError("to_index supports at most 64 bits");
  return words_.empty() ? 0 : words_[0];
}

BitString BitString::slice(std::size_t offset, std::size_t len) const {
  if (offset + len > n_) throw ConfigError("slice out of range");
  BitString out(len);
  const std::size_t shift = offset & 63;
  const std::size_t base = offset >> 6;
  for (std::size_t w = 0; w < out.words_.size(); ++w) {
    std::uint64_t lo = words_[base + w] >> shift;
    if (shift != 0 && base + w + 1 < words_.size()) {
      lo |= words_[base + w + 1] << (64 - shift);
    }
    out.words_[w] = lo;
  }
  out.clear_padding();
  return out;
}

BitString BitString::reversed() const {
  BitString out(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    if (get(i)) out.set(n_ - 1 - i, true);
  }
  return out;
}

BitString& BitString::operator^=(const BitString& other) {
  if (other.n_ != n_) throw ConfigError("xor of bit strings with different lengths");
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
  return *this;
}

std::string BitString::to_string() const {
  std::string out(n_, '0');
  for (std::size_t i = 0; i < n_; ++i) {
    if (get(i)) out[i] = '1';
  }
  return out;
}

void BitString::clear_padding() {
  if (const std::size_t tail = n_ & 63; tail != 0) {
    words_.back() &= (std::uint64_t{1} << tail) - 1;
  }
}

std::size_t hamming_distance(const BitString& a, const BitString& b) {
  if (a.size() != b.size()) throw ConfigError("hamming distance of different lengths");
  const auto wa = a.words();
  const auto wb = b.words();
  if (wa.size() >= kKernelMinWords) {
    return static_cast<std::size_t>(simd::active_kernels().hamming(wa.data(), wb.data(), wa.size()));
  }
  std::size_t total = 0;
  for (std::size_t i = 0; i < wa.size(); ++i) {
    total += static_cast<std::size_t>(std::popcount(wa[i] ^ wb[i]));
  }
  return total;
}

}  // namespace islandevo
