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

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rnclab/rng.hpp"

namespace rnclab {

inline constexpr int kMaxFieldBits = 16;

/// Reduction polynomials used for GF(2^u), u = 1..16. Bit k is the
/// coefficient of x^k.
///
///   u : poly      u : poly
///   1 : 0x3       9 : 0x211
///   2 : 0x7      10 : 0x409
///   3 : 0xB      11 : 0x805
///   4 : 0x13     12 : 0x1053
///   5 : 0x25     13 : 0x201B
///   6 : 0x43     14 : 0x4443
///   7 : 0x89     15 : 0x8003
///   8 : 0x11B    16 : 0x1100B
std::uint32_t standard_reduction_poly(int u);

/// Trial division over GF(2) by every polynomial of degree 1..degree/2.
bool is_irreducible(std::uint32_t poly, int degree);

struct FieldParams {
  int u = 8;
  std::uint32_t reduction_poly = 0x11B;

  static FieldParams standard(int u) { return {u, standard_reduction_poly(u)}; }
  std::uint32_t size() const { return std::uint32_t{1} << u; }
  friend bool operator==(const FieldParams&, const FieldParams&) = default;
};

struct FieldElement {
  std::uint16_t value = 0;

  constexpr FieldElement() = default;
  constexpr explicit FieldElement(std::uint32_t v) : value(static_cast<std::uint16_t>(v)) {}
  constexpr bool is_zero() const { return value == 0; }
  friend constexpr bool operator==(FieldElement, FieldElement) = default;
};

/// GF(2^u) arithmetic. Fields with u <= 8 multiply through log/antilog
/// tables; larger fields use shift-and-reduce. Both paths produce the same
/// products. Immutable after construction.
class GaloisField {
 public:
  explicit GaloisField(int u);
  explicit GaloisField(FieldParams params);

  const FieldParams& params() const { return params_; }
  int bits() const { return params_.u; }
  std::uint32_t size() const { return params_.size(); }
  bool contains(FieldElement a) const { return a.value < size(); }

  FieldElement add(FieldElement a, FieldElement b) const {
    return FieldElement(std::uint32_t{a.value} ^ b.value);
  }

  FieldElement mul(FieldElement a, FieldElement b) const {
    if (a.value == 0 || b.value == 0) return FieldElement{};
    if (!log_.empty()) return FieldElement(exp_[log_[a.value] + log_[b.value]]);
    return FieldElement(shift_reduce_mul(a.value, b.value));
  }

  /// Throws Error(ZeroInverse) for a == 0.
  FieldElement inv(FieldElement a) const;

  /// Uniform over all 2^u values, zero included.
  FieldElement uniform_random(SeededRng& rng) const {
    return FieldElement(static_cast<std::uint32_t>(rng.next()) & (size() - 1));
  }

  FieldElement pow(FieldElement a, std::uint64_t e) const;

  /// dst[k] += c * src[k]
  void mul_add(std::span<FieldElement> dst, std::span<const FieldElement> src,
               FieldElement c) const;

  /// Reference multiply, independent of the tables.
  std::uint32_t shift_reduce_mul(std::uint32_t a, std::uint32_t b) const;

 private:
  FieldParams params_;
  std::vector<std::uint16_t> log_;
  std::vector<std::uint16_t> exp_;
};

}  // namespace rnclab
