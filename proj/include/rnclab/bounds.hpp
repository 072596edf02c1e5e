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
#include <vector>

#include "rnclab/netgraph.hpp"
#include "rnclab/rnc.hpp"

namespace rnclab {

/// A probability carried together with its base-2 logarithm, which stays
/// accurate when the value itself is close to 0 or 1.
struct Probability {
  double value = 0.0;
  double log2 = 0.0;  // -inf when value == 0

  static Probability from_log2(double l2);
};

struct BoundInputs {
  int sinks = 1;         // D
  int zeta = 1;          // max_i t_i
  int eta = 0;           // coded edges in the best flow solution
  int u = 8;             // field bit-width
  bool divisible = true; // t_i | eta for every coding node
};

/// Feasibility lower bound for limited randomized coding:
///   divisible:      (1 - D*zeta/2^u)^(eta/zeta)
///   otherwise: min over z in 1..zeta of (1 - D*z/2^u)^ceil(eta/z)
/// Throws FieldTooSmall when 2^u <= D*zeta.
Probability feasibility_lower_bound(const BoundInputs& b);

/// 1 - (1 - m/2^u)^ceil(M/m): bound on Pr[P = 0] for a polynomial of total
/// degree M whose per-variable degree is at most m.
Probability polynomial_zero_upper_bound(int total_degree, int max_var_degree, int u);

/// (1 - J/2^u)^ceil(n(sum nu - 2)/J); J = n for L-RNC, J = 1 for B-RNC.
Probability grid_lower_bound(const GridSpec& spec, int u, int hyperedges);

struct ReducedInputs {
  int R = 3;
  int Q = 2;
  int eta_R = 0;
  int zeta_R = 1;
  int eta_Q = 0;
  int zeta_Q = 1;

  void check() const;
};

double binomial(int n, int k);

/// Single-sink outage bound at reduced rate, raised to C(R,Q):
///   E-RNC:      (1 - (1 - 1/2^u)^eta_Q)^C(R,Q)
///   L/B-RNC:    (1 - (1 - zeta_Q/2^u)^(eta_Q/zeta_Q))^C(R,Q)
/// With D sinks the union bound D * P is used, capped at 1.
Probability reduced_outage_upper_bound(const ReducedInputs& ri, int u, Variant scheme, int sinks);

/// Closed-form asymptotic gain: (eta_Q/eta_R) C(R,Q) for E-RNC,
/// (eta_Q zeta_R)/(eta_R zeta_Q) C(R,Q) otherwise.
double reliability_gain(const ReducedInputs& ri, Variant scheme);

struct OutagePoint {
  int u = 0;
  double outage = 0.0;
};

/// Ratio of least-squares slopes of log2(outage) against u, reduced over
/// full, using the `window` largest u values where both series are positive.
double empirical_gain(const std::vector<OutagePoint>& full, const std::vector<OutagePoint>& reduced,
                      std::size_t window = 4);

/// Least-squares slope of log2(outage) against u.
double log2_slope(const std::vector<OutagePoint>& points);

}  // namespace rnclab
