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

// Data-parallel inner loops with a scalar reference and ISA-specific
// variants. The active table is picked once at first use from the CPU's
// reported features; ISLANDEVO_SIMD=scalar forces the reference path.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace islandevo::simd {

struct Kernels {
  std::string_view name;
  // y[i] += a * x[i]
  void (*axpy)(double a, const double* x, double* y, std::size_t len);
  // sum_i x[i] * y[i]
  double (*dot)(const double* x, const double* y, std::size_t len);
  // sum of popcount(words[i])
  std::uint64_t (*popcount)(const std::uint64_t* words, std::size_t len);
  // sum of popcount(a[i] ^ b[i])
  std::uint64_t (*hamming)(const std::uint64_t* a, const std::uint64_t* b,
                           std::size_t len);
};

const Kernels& scalar_kernels();

// Every variant compiled into this build and supported by the running CPU,
// scalar first.
std::vector<const Kernels*> available_kernels();

const Kernels& active_kernels();

inline void axpy(double a, std::span<const double> x, std::span<double> y) {
  active_kernels().axpy(a, x.data(), y.data(), x.size());
}

inline double dot(std::span<const double> x, std::span<const double> y) {
  return active_kernels().dot(x.data(), y.data(), x.size());
}

namespace detail {
// Per-ISA tables; each returns nullptr when not built for this target.
const Kernels* avx2_kernels();
const Kernels* neon_kernels();
}  // namespace detail

}  // namespace islandevo::simd
