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

// NEON variants for aarch64, where Advanced SIMD is part of the baseline ISA.

#include "islandevo/simd/kernels.hpp"

#include <arm_neon.h>

#include <bit>

namespace islandevo::simd {
namespace {

void axpy_neon(double a, const double* x, double* y, std::size_t len) {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    float64x2_t y0 = vld1q_f64(y + i);
    float64x2_t y1 = vld1q_f64(y + i + 2);
    y0 = vfmaq_f64(y0, va, vld1q_f64(x + i));
    y1 = vfmaq_f64(y1, va, vld1q_f64(x + i + 2));
    vst1q_f64(y + i, y0);
    vst1q_f64(y + i + 2, y1);
  }
  for (; i < len; ++i) y[i] += a * x[i];
}

double dot_neon(const double* x, const double* y, std::size_t len) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(x + i), vld1q_f64(y + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(x + i + 2), vld1q_f64(y + i + 2));
  }
  double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < len; ++i) acc += x[i] * y[i];
  return acc;
}

std::uint64_t popcount_neon(const std::uint64_t* words, std::size_t len) {
  std::uint64_t total = 0;
  std::size_t i = 0;
  for (; i + 2 <= len; i += 2) {
    const uint8x16_t bytes = vcntq_u8(vreinterpretq_u8_u64(vld1q_u64(words + i)));
    total += vaddlvq_u8(bytes);
  }
  for (; i < len; ++i) total += std::popcount(words[i]);
  return total;
}

std::uint64_t hamming_neon(const std::uint64_t* a, const std::uint64_t* b,
                           std::size_t len) {
  std::uint64_t total = 0;
  std::size_t i = 0;
  for (; i + 2 <= len; i += 2) {
    const uint64x2_t v = veorq_u64(vld1q_u64(a + i), vld1q_u64(b + i));
    total += vaddlvq_u8(vcntq_u8(vreinterpretq_u8_u64(v)));
  }
  for (; i < len; ++i) total += std::popcount(a[i] ^ b[i]);
  return total;
}

constexpr Kernels kNeon{"neon", axpy_neon, dot_neon, popcount_neon, hamming_neon};

}  // namespace

namespace detail {
const Kernels* neon_kernels() { return &kNeon; }
}  // namespace detail

}  // namespace islandevo::simd
