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

#include <cstdlib>
#include <string_view>

#include "islandevo/simd/kernels.hpp"

namespace islandevo::simd {

namespace detail {
#if !defined(ISLANDEVO_HAVE_AVX2)
const Kernels* avx2_kernels() { return nullptr; }
#endif
#if !defined(ISLANDEVO_HAVE_NEON)
const Kernels* neon_kernels() { return nullptr; }
#endif
}  // namespace detail

namespace {

bool cpu_has_avx2() {
#if defined(ISLANDEVO_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma") &&
         __builtin_cpu_supports("popcnt");
#else
  return false;
#endif
}

const Kernels& select() {
  if (const char* forced = std::getenv("ISLANDEVO_SIMD")) {
    if (std::string_view(forced) == "scalar") return scalar_kernels();
  }
  if (cpu_has_avx2()) return *detail::avx2_kernels();
  if (const Kernels* neon = detail::neon_kernels()) return *neon;
  return scalar_kernels();
}

}  // namespace

std::vector<const Kernels*> available_kernels() {
  std::vector<const Kernels*> out{&scalar_kernels()};
  if (cpu_has_avx2()) out.push_back(detail::avx2_kernels());
  if (const Kernels* neon = detail::neon_kernels()) out.push_back(neon);
  return out;
}

const Kernels& active_kernels() {
  static const Kernels& chosen = select();
  return chosen;
}

}  // namespace islandevo::simd
