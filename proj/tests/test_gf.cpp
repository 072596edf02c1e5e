// Copyright 2026 The rnclab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <array>

#include "doctest.h"
#include "rnclab/error.hpp"
#include "rnclab/gf.hpp"

using namespace rnclab;

TEST_CASE("standard reduction polynomials are irreducible") {
  for (int u = 1; u <= kMaxFieldBits; ++u) {
    CAPTURE(u);
    CHECK(is_irreducible(standard_reduction_poly(u), u));
  }
  CHECK_FALSE(is_irreducible(0x5, 2));    // x^2 + 1 = (x + 1)^2
  CHECK_FALSE(is_irreducible(0x11, 4));   // x^4 + 1
  CHECK_THROWS_AS(GaloisField(FieldParams{2, 0x5}), Error);
  CHECK_THROWS_AS(GaloisField(0), Error);
  CHECK_THROWS_AS(GaloisField(17), Error);
}

TEST_CASE("known products and inverses") {
  const GaloisField f8(3), f256(8), f4(2);
  CHECK(f8.mul(FieldElement(6), FieldElement(3)) == FieldElement(1));
  CHECK(f256.mul(FieldElement(0x02), FieldElement(0x80)) == FieldElement(0x1B));
  CHECK(f256.mul(FieldElement(0x53), FieldElement(0xCA)) == FieldElement(0x01));
  CHECK(f4.inv(FieldElement(2)) == FieldElement(3));
  CHECK(f4.add(FieldElement(3), FieldElement(3)) == FieldElement(0));
}

TEST_CASE("table multiply agrees with shift-and-reduce") {
  for (int u = 1; u <= 8; ++u) {
    const GaloisField f(u);
    for (std::uint32_t a = 0; a < f.size(); ++a)
      for (std::uint32_t b = 0; b < f.size(); ++b)
        REQUIRE(f.mul(FieldElement(a), FieldElement(b)).value == f.shift_reduce_mul(a, b));
  }
}

TEST_CASE("field axioms on random triples") {
  for (int u : {1, 2, 3, 4, 8, 12, 16}) {
    const GaloisField f(u);
    SeededRng rng(1234 + u);
    for (int i = 0; i < 2000; ++i) {
      const auto a = f.uniform_random(rng), b = f.uniform_random(rng), c = f.uniform_random(rng);
      REQUIRE(f.mul(a, b) == f.mul(b, a));
      REQUIRE(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
      REQUIRE(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
      REQUIRE(f.mul(a, FieldElement(1)) == a);
      if (!a.is_zero()) REQUIRE(f.mul(a, f.inv(a)) == FieldElement(1));
    }
  }
}

TEST_CASE("inverse exhaustively and zero inverse") {
  for (int u = 1; u <= 8; ++u) {
    const GaloisField f(u);
    for (std::uint32_t a = 1; a < f.size(); ++a) REQUIRE(f.mul(FieldElement(a), f.inv(FieldElement(a))) == FieldElement(1));
  }
  const GaloisField f16(16);
  CHECK(f16.mul(FieldElement(0xFFFF), f16.inv(FieldElement(0xFFFF))) == FieldElement(1));
  try {
    (void)f16.inv(FieldElement{});
    FAIL("expected ZeroInverse");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroInverse);
  }
}

TEST_CASE("multiplicative group order") {
  for (int u : {3, 8, 16}) {
    const GaloisField f(u);
    for (std::uint32_t a : {1U, 2U, 3U, f.size() - 1}) CHECK(f.pow(FieldElement(a), f.size() - 1) == FieldElement(1));
    CHECK(f.pow(FieldElement(0), 0) == FieldElement(1));
  }
}

TEST_CASE("mul_add") {
  const GaloisField f(4);
  std::array<FieldElement, 3> dst{FieldElement(1), FieldElement(2), FieldElement(3)};
  const std::array<FieldElement, 3> src{FieldElement(5), FieldElement(0), FieldElement(15)};
  f.mul_add(dst, src, FieldElement(7));
  for (std::size_t k = 0; k < 3; ++k) {
    const FieldElement expect = f.add(FieldElement(k + 1), f.mul(src[k], FieldElement(7)));
    CHECK(dst[k] == expect);
  }
}

TEST_CASE("uniform draws cover GF(16) evenly") {
  const GaloisField f(4);
  SeededRng rng(99);
  std::array<int, 16> hist{};
  const int n = 160000;
  for (int i = 0; i < n; ++i) ++hist[f.uniform_random(rng).value];
  double chi2 = 0;
  for (int h : hist) chi2 += (h - n / 16.0) * (h - n / 16.0) / (n / 16.0);
  CHECK(chi2 < 37.7);  // 15 dof, p = 0.001
}

TEST_CASE("rng streams are reproducible and distinct") {
  auto a = SeededRng::for_stream(42, 7), b = SeededRng::for_stream(42, 7), c = SeededRng::for_stream(42, 8);
  const auto x = a.next();
  CHECK(x == b.next());
  CHECK(x != c.next());
}
