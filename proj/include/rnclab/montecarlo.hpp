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
#include <optional>
#include <vector>

#include "rnclab/bounds.hpp"
#include "rnclab/netgraph.hpp"
#include "rnclab/rnc.hpp"

namespace rnclab {

struct ExperimentConfig {
  Network network;
  Variant scheme = Variant::ERnc;
  int u = 8;
  std::uint64_t trials = 1000;
  std::uint64_t master_seed = 0;
  std::optional<int> reduced_q;  // transmit q < R independent processes through an MDS expansion
  unsigned threads = 0;          // 0: use all available, capped by RNCLAB_THREADS

  void check() const;
};

struct OutageEstimate {
  std::uint64_t failures = 0;
  std::uint64_t trials = 0;
  double p_hat = 0.0;
  double ci_lo = 0.0;  // Wilson 95%; one-sided upper bound when failures == 0
  double ci_hi = 0.0;
  std::optional<double> log2_p;  // absent (censored) when failures == 0

  bool censored() const { return failures == 0; }
};

OutageEstimate make_estimate(std::uint64_t failures, std::uint64_t trials);

/// Worker threads to use: `requested` (0 = hardware concurrency), capped by
/// the RNCLAB_THREADS environment variable, at least 1.
unsigned worker_count(unsigned requested);

/// Runs cfg.trials independent generations; trial i draws from the stream
/// (master_seed, i), so the tally does not depend on the worker count.
OutageEstimate estimate_outage(const ExperimentConfig& cfg);

/// Exact outage probability by enumerating every coefficient assignment.
/// Throws TooLarge when (2^u)^coefficients exceeds `cap`.
double exact_outage(const Network& net, const SchemeConfig& scheme, int u, std::optional<int> reduced_q = std::nullopt,
                    std::uint64_t cap = std::uint64_t{1} << 24);

/// Bound parameters (D, zeta, eta, divisibility) measured on a network.
/// Throws InvalidNetwork when the scheme's min cut (B-RNC: every coding
/// node broadcasts) is below the source rate, where the bound does not apply.
BoundInputs bound_inputs(const Network& net, const SchemeConfig& scheme, int u);

/// Analytic outage upper bound for a network/scheme, evaluated per u. Grid
/// networks use the closed grid forms; other networks use measured bound
/// inputs. `at` is empty where the bound's preconditions fail.
class OutageBound {
 public:
  OutageBound(const Network& net, Variant scheme, std::optional<int> reduced_q);
  std::optional<Probability> at(int u) const;

 private:
  Variant scheme_;
  std::optional<GridSpec> grid_;
  std::optional<int> reduced_q_;
  BoundInputs full_{};
  std::optional<ReducedInputs> reduced_;
  int sinks_ = 1;
};

struct SweepRow {
  int u = 0;
  OutageEstimate estimate;
  std::optional<Probability> bound_upper;
};

std::vector<SweepRow> sweep(const ExperimentConfig& cfg, const std::vector<int>& u_values);

}  // namespace rnclab
