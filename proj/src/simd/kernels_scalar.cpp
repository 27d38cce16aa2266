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

#include "islandevo/simd/kernels.hpp"

#include <bit>

namespace islandevo::simd {
namespace {

void axpy_scalar(double a, const double* x, double* y, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) y[i] += a * x[i];
}

double dot_scalar(const double* x, const double* y, std::size_t len) {
  double acc = 0.0;
  for (std::size_t i = 0; i < len; ++i) acc += x[i] * y[i];
  return acc;
}

std::uint64_t popcount_scalar(const std::uint64_t* words, std::size_t len) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < len; ++i) total += std::popcount(words[i]);
  return total;
}

std::uint64_t hamming_scalar(const std::uint64_t* a, const std::uint64_t* b,
                             std::size_t len) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < len; ++i) total += std::popcount(a[i] ^ b[i]);
  return total;
}

constexpr Kernels kScalar{"scalar", axpy_scalar, dot_scalar, popcount_scalar,
                          hamming_scalar};

}  // namespace

const Kernels& scalar_kernels() { return kScalar; }

}  // namespace islandevo::simd
