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

#include "rnclab/gf.hpp"

#include <array>
#include <bit>
#include <string>

#include "rnclab/error.hpp"

namespace rnclab {

namespace {

constexpr std::array<std::uint32_t, kMaxFieldBits + 1> kReductionPolys = {
    0x0,    0x3,    0x7,    0xB,    0x13,   0x25,   0x43,   0x89,    0x11B,
    0x211,  0x409,  0x805,  0x1053, 0x201B, 0x4443, 0x8003, 0x1100B,
};

int degree(std::uint32_t p) { return p == 0 ? -1 : std::bit_width(p) - 1; }

std::uint32_t poly_mod(std::uint32_t a, std::uint32_t b) {
  const int db = degree(b);
  for (int da = degree(a); da >= db; da = degree(a)) a ^= b << (da - db);
  return a;
}

}  // namespace

std::uint32_t standard_reduction_poly(int u) {
  if (u < 1 || u > kMaxFieldBits)
    throw Error(ErrorCode::InvalidArgument, "field bit-width must be in 1..16, got " + std::to_string(u));
  return kReductionPolys[static_cast<std::size_t>(u)];
}

bool is_irreducible(std::uint32_t poly, int deg) {
  if (deg < 1 || degree(poly) != deg) return false;
  for (std::uint32_t d = 2; degree(d) <= deg / 2; ++d)
    if (poly_mod(poly, d) == 0) return false;
  return true;
}

GaloisField::GaloisField(int u) : GaloisField(FieldParams::standard(u)) {}

GaloisField::GaloisField(FieldParams params) : params_(params) {
  if (params_.u < 1 || params_.u > kMaxFieldBits)
    throw Error(ErrorCode::InvalidArgument, "field bit-width must be in 1..16");
  if (!is_irreducible(params_.reduction_poly, params_.u))
    throw Error(ErrorCode::ReduciblePolynomial, "reduction polynomial is not irreducible of degree u");
  if (params_.u > 8) return;

  // Find a generator of the multiplicative group; 0x11B has none at x.
  const std::uint32_t order = size() - 1;
  std::uint32_t gen = 1;
  for (std::uint32_t g = (order == 1 ? 1 : 2); g < size(); ++g) {
    std::uint32_t x = g, k = 1;
    while (x != 1) {
      x = shift_reduce_mul(x, g);
      ++k;
    }
    if (k == order) {
      gen = g;
      break;
    }
  }
  log_.assign(size(), 0);
  exp_.assign(2 * order, 0);
  std::uint32_t x = 1;
  for (std::uint32_t i = 0; i < order; ++i) {
    exp_[i] = exp_[i + order] = static_cast<std::uint16_t>(x);
    log_[x] = static_cast<std::uint16_t>(i);
    x = shift_reduce_mul(x, gen);
  }
}

std::uint32_t GaloisField::shift_reduce_mul(std::uint32_t a, std::uint32_t b) const {
  const std::uint32_t top = size();
  std::uint32_t r = 0;
  while (b != 0) {
    if (b & 1U) r ^= a;
    b >>= 1;
    a <<= 1;
    if (a & top) a ^= params_.reduction_poly;
  }
  return r;
}

FieldElement GaloisField::pow(FieldElement a, std::uint64_t e) const {
  FieldElement result(1);
  while (e != 0) {
    if (e & 1U) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

FieldElement GaloisField::inv(FieldElement a) const {
  if (a.is_zero()) throw Error(ErrorCode::ZeroInverse, "zero has no multiplicative inverse");
  const std::uint32_t order = size() - 1;
  if (!log_.empty()) return FieldElement(exp_[(order - log_[a.value]) % order]);
  return pow(a, order - 1);
}

void GaloisField::mul_add(std::span<FieldElement> dst, std::span<const FieldElement> src,
                          FieldElement c) const {
  if (c.is_zero()) return;
  const std::size_t n = dst.size() < src.size() ? dst.size() : src.size();
  if (!log_.empty()) {
    const std::uint32_t lc = log_[c.value];
    for (std::size_t k = 0; k < n; ++k) {
      const std::uint16_t s = src[k].value;
      if (s != 0) dst[k].value ^= exp_[lc + log_[s]];
    }
    return;
  }
  for (std::size_t k = 0; k < n; ++k)
    dst[k].value ^= static_cast<std::uint16_t>(shift_reduce_mul(c.value, src[k].value));
}

}  // namespace rnclab
