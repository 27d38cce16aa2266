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

#include "doctest.h"

#include <bit>
#include <cmath>
#include <vector>

#include "islandevo/rng.hpp"
#include "islandevo/simd/kernels.hpp"

using namespace islandevo;

namespace {

std::vector<double> random_doubles(RngStream& rng, std::size_t len) {
  std::vector<double> v(len);
  for (double& x : v) x = rng.uniform01() * 2.0 - 1.0;
  return v;
}

}  // namespace

TEST_CASE("scalar table is first and the active table is listed") {
  const auto all = simd::available_kernels();
  REQUIRE(!all.empty());
  CHECK(all.front() == &simd::scalar_kernels());
  bool found = false;
  for (const auto* k : all) found = found || k == &simd::active_kernels();
  CHECK(found);
  MESSAGE("active kernels: " << simd::active_kernels().name);
}

TEST_CASE("every variant agrees with the scalar reference") {
  const simd::Kernels& ref = simd::scalar_kernels();
  RngStream rng(2024);
  for (const simd::Kernels* k : simd::available_kernels()) {
    INFO("variant " << k->name);
    // Lengths straddle every vector width and remainder.
    for (std::size_t len : {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 33, 64, 100, 257, 1000}) {
      const auto x = random_doubles(rng, len);
      auto y_ref = random_doubles(rng, len);
      auto y = y_ref;
      ref.axpy(-0.37, x.data(), y_ref.data(), len);
      k->axpy(-0.37, x.data(), y.data(), len);
      for (std::size_t i = 0; i < len; ++i) REQUIRE(y[i] == doctest::Approx(y_ref[i]).epsilon(1e-15));

      const double d_ref = ref.dot(x.data(), y.data(), len);
      const double d = k->dot(x.data(), y.data(), len);
      double scale = 0.0;
      for (std::size_t i = 0; i < len; ++i) scale += std::fabs(x[i] * y[i]);
      REQUIRE(std::fabs(d - d_ref) <= 1e-14 * (scale + 1.0));

      std::vector<std::uint64_t> a(len);
      std::vector<std::uint64_t> b(len);
      std::uint64_t direct = 0;
      std::uint64_t direct_x = 0;
      for (std::size_t i = 0; i < len; ++i) {
        a[i] = rng.next();
        b[i] = (i % 5 == 0) ? ~std::uint64_t{0} : rng.next();
        direct += std::popcount(a[i]);
        direct_x += std::popcount(a[i] ^ b[i]);
      }
      REQUIRE(k->popcount(a.data(), len) == direct);
      REQUIRE(k->hamming(a.data(), b.data(), len) == direct_x);
      REQUIRE(ref.popcount(a.data(), len) == direct);
    }
  }
}

TEST_CASE("span wrappers route through the active table") {
  const std::vector<double> x = {1, 2, 3, 4, 5};
  std::vector<double> y = {1, 1, 1, 1, 1};
  simd::axpy(2.0, x, y);
  CHECK(y == std::vector<double>{3, 5, 7, 9, 11});
  CHECK(simd::dot(x, y) == doctest::Approx(3 + 10 + 21 + 36 + 55));
}
