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

#include "rnclab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace rnclab {

namespace {

constexpr double kInvLn2 = 1.0 / std::numbers::ln2;

double field_size(int u) {
  if (u < 1 || u > 62) throw Error(ErrorCode::InvalidArgument, "field bit-width must be in 1..62 for bounds");
  return std::ldexp(1.0, u);
}

// log2((1 - x)^k)
double log2_pow_one_minus(double x, double k) { return k * std::log1p(-x) * kInvLn2; }

// 1 - (1 - x)^k, as a Probability
Probability one_minus_pow(double x, double k) {
  const double v = -std::expm1(k * std::log1p(-x));
  return {v, v > 0 ? std::log2(v) : -std::numeric_limits<double>::infinity()};
}

long ceil_div(long a, long b) { return (a + b - 1) / b; }

}  // namespace

Probability Probability::from_log2(double l2) { return {std::exp2(l2), l2}; }

Probability feasibility_lower_bound(const BoundInputs& b) {
  if (b.sinks < 1 || b.zeta < 1 || b.eta < 0)
    throw Error(ErrorCode::InvalidArgument, "bound inputs need D >= 1, zeta >= 1, eta >= 0");
  const double q = field_size(b.u);
  if (q <= static_cast<double>(b.sinks) * b.zeta)
    throw Error(ErrorCode::FieldTooSmall, "2^u must exceed D*zeta = " + std::to_string(b.sinks * b.zeta));
  if (b.divisible)
    return Probability::from_log2(
        log2_pow_one_minus(b.sinks * static_cast<double>(b.zeta) / q, static_cast<double>(b.eta) / b.zeta));
  double worst = 0.0;
  for (int z = 1; z <= b.zeta; ++z) {
    const double l = log2_pow_one_minus(b.sinks * static_cast<double>(z) / q, static_cast<double>(ceil_div(b.eta, z)));
    worst = std::min(worst, l);
  }
  return Probability::from_log2(worst);
}

Probability polynomial_zero_upper_bound(int total_degree, int max_var_degree, int u) {
  const double q = field_size(u);
  if (max_var_degree < 1 || max_var_degree > total_degree)
    throw Error(ErrorCode::InvalidArgument, "need 1 <= m <= M");
  if (max_var_degree >= q) throw Error(ErrorCode::DegreeTooHigh, "per-variable degree must be below 2^u");
  return one_minus_pow(max_var_degree / q, static_cast<double>(ceil_div(total_degree, max_var_degree)));
}

Probability grid_lower_bound(const GridSpec& spec, int u, int hyperedges) {
  spec.check();
  if (hyperedges < 1 || hyperedges > spec.n)
    throw Error(ErrorCode::InvalidArgument, "hyperedge count J must lie in 1..n");
  const double q = field_size(u);
  if (q <= hyperedges) throw Error(ErrorCode::FieldTooSmall, "2^u must exceed J");
  const long exponent = ceil_div(eta_grid(spec), hyperedges);
  return Probability::from_log2(log2_pow_one_minus(hyperedges / q, static_cast<double>(exponent)));
}

void ReducedInputs::check() const {
  if (!(1 < Q && Q < R)) throw Error(ErrorCode::InvalidArgument, "reduced rate needs 1 < Q < R");
  if (eta_R < 0 || eta_Q < 0 || zeta_R < 1 || zeta_Q < 1)
    throw Error(ErrorCode::InvalidArgument, "eta must be >= 0 and zeta >= 1");
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

Probability reduced_outage_upper_bound(const ReducedInputs& ri, int u, Variant scheme, int sinks) {
  ri.check();
  if (sinks < 1) throw Error(ErrorCode::NoSinks, "need at least one sink");
  const double q = field_size(u);
  const double gamma = binomial(ri.R, ri.Q);

  Probability single;
  if (scheme == Variant::ERnc) {
    single = one_minus_pow(1.0 / q, ri.eta_Q);
  } else {
    if (ri.eta_Q % ri.zeta_Q != 0)
      throw Error(ErrorCode::DivisibilityViolated, "zeta_Q must divide eta_Q");
    if (q <= ri.zeta_Q) throw Error(ErrorCode::FieldTooSmall, "2^u must exceed zeta_Q");
    single = one_minus_pow(ri.zeta_Q / q, static_cast<double>(ri.eta_Q / ri.zeta_Q));
  }
  if (single.value == 0.0) return {0.0, -std::numeric_limits<double>::infinity()};
  const double l2 = std::min(0.0, std::log2(static_cast<double>(sinks)) + gamma * single.log2);
  return Probability::from_log2(l2);
}

double reliability_gain(const ReducedInputs& ri, Variant scheme) {
  ri.check();
  if (ri.eta_R == 0) throw Error(ErrorCode::InvalidArgument, "eta_R must be positive");
  const double gamma = binomial(ri.R, ri.Q);
  if (scheme == Variant::ERnc) return static_cast<double>(ri.eta_Q) / ri.eta_R * gamma;
  return static_cast<double>(ri.eta_Q) * ri.zeta_R / (static_cast<double>(ri.eta_R) * ri.zeta_Q) * gamma;
}

double log2_slope(const std::vector<OutagePoint>& points) {
  if (points.size() < 2) throw Error(ErrorCode::InsufficientData, "slope needs at least 2 points");
  double su = 0, sl = 0;
  for (const auto& p : points) {
    if (!(p.outage > 0)) throw Error(ErrorCode::InsufficientData, "slope needs positive outage values");
    su += p.u;
    sl += std::log2(p.outage);
  }
  const double n = static_cast<double>(points.size());
  const double mu = su / n, ml = sl / n;
  double num = 0, den = 0;
  for (const auto& p : points) {
    num += (p.u - mu) * (std::log2(p.outage) - ml);
    den += (p.u - mu) * (p.u - mu);
  }
  if (den == 0) throw Error(ErrorCode::InsufficientData, "slope needs at least 2 distinct u values");
  return num / den;
}

double empirical_gain(const std::vector<OutagePoint>& full, const std::vector<OutagePoint>& reduced,
                      std::size_t window) {
  std::vector<OutagePoint> a, b;
  for (const auto& f : full) {
    if (!(f.outage > 0)) continue;
    auto it = std::find_if(reduced.begin(), reduced.end(), [&](const OutagePoint& r) { return r.u == f.u; });
    if (it == reduced.end() || !(it->outage > 0)) continue;
    a.push_back(f);
    b.push_back(*it);
  }
  if (a.size() < 2) throw Error(ErrorCode::InsufficientData, "need at least 2 shared positive points");
  std::vector<std::size_t> idx(a.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return a[x].u < a[y].u; });
  const std::size_t take = std::max<std::size_t>(2, std::min(window, idx.size()));
  std::vector<OutagePoint> wa, wb;
  for (std::size_t i = idx.size() - take; i < idx.size(); ++i) {
    wa.push_back(a[idx[i]]);
    wb.push_back(b[idx[i]]);
  }
  const double sf = log2_slope(wa);
  if (sf == 0) throw Error(ErrorCode::InsufficientData, "full-rate series is flat");
  return log2_slope(wb) / sf;
}

}  // namespace rnclab
