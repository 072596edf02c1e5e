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

#include "rnclab/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>
#include <thread>

namespace rnclab {

namespace {

constexpr double kZ95 = 1.959963984540054;
constexpr double kZ95OneSided = 1.6448536269514722;

// Evaluates trial outcomes for one compiled experiment. One instance per
// worker; holds all scratch buffers.
class TrialKernel {
 public:
  TrialKernel(const Network& net, Variant variant, int u, std::optional<int> reduced_q)
      : field_(u), plan_(net, SchemeConfig::for_network(net, variant)), r_(plan_.processes()),
        source_(unit_source_gevs(r_)) {
    if (reduced_q) {
      q_ = static_cast<std::size_t>(*reduced_q);
      expansion_ = mds_expansion(r_, q_, field_);
    }
  }

  TrialKernel(const Network& net, const SchemeConfig& scheme, int u, std::optional<int> reduced_q)
      : field_(u), plan_(net, scheme), r_(plan_.processes()), source_(unit_source_gevs(r_)) {
    if (reduced_q) {
      q_ = static_cast<std::size_t>(*reduced_q);
      expansion_ = mds_expansion(r_, q_, field_);
    }
  }

  const GaloisField& field() const { return field_; }
  const GenerationPlan& plan() const { return plan_; }

  template <CoefficientSource Src>
  bool fails(Src& src) {
    plan_.run(field_, source_, r_, gevs_, src);
    for (std::size_t i = 0; i < plan_.sinks().size(); ++i) {
      plan_.gather_sink(i, gevs_, r_, rows_);
      const std::size_t w = plan_.sink_edges(i).size();
      if (q_ == 0) {
        if (rank_in_place(field_, rows_, w, r_) != r_) return true;
        continue;
      }
      // rows (w x R) * expansion (R x Q)
      product_.assign(w * q_, FieldElement{});
      for (std::size_t row = 0; row < w; ++row)
        for (std::size_t k = 0; k < r_; ++k)
          field_.mul_add(std::span<FieldElement>(product_.data() + row * q_, q_), expansion_.row(k), rows_[row * r_ + k]);
      if (rank_in_place(field_, product_, w, q_) != q_) return true;
    }
    return false;
  }

 private:
  GaloisField field_;
  GenerationPlan plan_;
  std::size_t r_;
  std::size_t q_ = 0;
  std::vector<FieldElement> source_;
  Matrix expansion_;
  std::vector<FieldElement> gevs_, rows_, product_;
};

std::uint64_t count_failures(const ExperimentConfig& cfg, std::uint64_t begin, std::uint64_t end) {
  TrialKernel kernel(cfg.network, cfg.scheme, cfg.u, cfg.reduced_q);
  std::uint64_t failures = 0;
  for (std::uint64_t i = begin; i < end; ++i) {
    SeededRng rng = SeededRng::for_stream(cfg.master_seed, i);
    RandomCoefficients src(kernel.field(), rng);
    failures += kernel.fails(src) ? 1 : 0;
  }
  return failures;
}

Probability complement(const Probability& p) {
  const double v = -std::expm1(p.log2 * std::numbers::ln2);
  return {v, v > 0 ? std::log2(v) : -std::numeric_limits<double>::infinity()};
}

}  // namespace

void ExperimentConfig::check() const {
  if (trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be >= 1");
  if (u < 1 || u > kMaxFieldBits) throw Error(ErrorCode::InvalidArgument, "u must lie in 1..16");
  require_valid(network);
  if (reduced_q) {
    const auto r = static_cast<int>(network.outgoing(network.source()).size());
    if (!(1 < *reduced_q && *reduced_q < r))
      throw Error(ErrorCode::InvalidArgument, "reduced_q must satisfy 1 < q < R = " + std::to_string(r));
  }
}

OutageEstimate make_estimate(std::uint64_t failures, std::uint64_t trials) {
  if (trials == 0 || failures > trials) throw Error(ErrorCode::InvalidArgument, "need 0 <= failures <= trials, trials >= 1");
  OutageEstimate e;
  e.failures = failures;
  e.trials = trials;
  const double n = static_cast<double>(trials);
  e.p_hat = static_cast<double>(failures) / n;
  if (failures == 0) {
    const double z2 = kZ95OneSided * kZ95OneSided;
    e.ci_lo = 0.0;
    e.ci_hi = z2 / (n + z2);
    return e;
  }
  const double z2 = kZ95 * kZ95;
  const double denom = 1.0 + z2 / n;
  const double center = (e.p_hat + z2 / (2 * n)) / denom;
  const double half = kZ95 / denom * std::sqrt(e.p_hat * (1 - e.p_hat) / n + z2 / (4 * n * n));
  e.ci_lo = std::clamp(center - half, 0.0, e.p_hat);
  e.ci_hi = std::clamp(center + half, e.p_hat, 1.0);
  e.log2_p = std::log2(e.p_hat);
  return e;
}

unsigned worker_count(unsigned requested) {
  unsigned n = requested != 0 ? requested : std::max(1U, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("RNCLAB_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return std::max(1U, n);
}

OutageEstimate estimate_outage(const ExperimentConfig& cfg) {
  cfg.check();
  const auto workers = static_cast<std::uint64_t>(std::min<std::uint64_t>(worker_count(cfg.threads), cfg.trials));
  if (workers <= 1) return make_estimate(count_failures(cfg, 0, cfg.trials), cfg.trials);

  std::vector<std::uint64_t> partial(workers, 0);
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    const std::uint64_t chunk = (cfg.trials + workers - 1) / workers;
    for (std::uint64_t w = 0; w < workers; ++w) {
      const std::uint64_t begin = std::min(cfg.trials, w * chunk), end = std::min(cfg.trials, begin + chunk);
      pool.emplace_back([&, w, begin, end] {
        try {
          partial[w] = count_failures(cfg, begin, end);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return make_estimate(std::accumulate(partial.begin(), partial.end(), std::uint64_t{0}), cfg.trials);
}

double exact_outage(const Network& net, const SchemeConfig& scheme, int u, std::optional<int> reduced_q,
                    std::uint64_t cap) {
  TrialKernel kernel(net, scheme, u, reduced_q);
  const std::size_t count = kernel.plan().coefficient_count();
  const double log2_total = static_cast<double>(count) * u;
  if (log2_total > std::log2(static_cast<double>(cap)))
    throw Error(ErrorCode::TooLarge, std::to_string(count) + " coefficients over GF(2^" + std::to_string(u) +
                                         ") exceed the enumeration cap");
  const std::uint32_t q = kernel.field().size();
  std::vector<FieldElement> assignment(count);
  std::uint64_t failures = 0, total = 0;
  for (;;) {
    SequenceCoefficients src(assignment);
    failures += kernel.fails(src) ? 1 : 0;
    ++total;
    std::size_t k = 0;
    for (; k < count; ++k) {
      const std::uint32_t next = assignment[k].value + 1U;
      if (next < q) {
        assignment[k].value = static_cast<std::uint16_t>(next);
        break;
      }
      assignment[k].value = 0;
    }
    if (k == count) break;
  }
  return static_cast<double>(failures) / static_cast<double>(total);
}

BoundInputs bound_inputs(const Network& net, const SchemeConfig& scheme, int u) {
  // The bound assumes the scheme keeps the min cut at R. Full broadcasting
  // turns each coding node's outputs into one hyperedge, which can lower it.
  Network effective = net;
  if (scheme.variant == Variant::BRnc)
    for (NodeId v : scheme.coding_nodes)
      if (net.outgoing(v).size() > 1) effective.set_hyperedges(v, {net.outgoing(v)});
  const auto r = static_cast<int>(net.outgoing(net.source()).size());
  if (flow_summary(effective).min_flow < r)
    throw Error(ErrorCode::InvalidNetwork, "min cut under this scheme is below R = " + std::to_string(r));

  BoundInputs b;
  b.u = u;
  b.sinks = static_cast<int>(net.sinks().size());
  b.eta = eta_general(net, scheme.coding_nodes).value;
  b.zeta = 1;
  b.divisible = true;
  if (scheme.variant == Variant::LRnc) {
    b.zeta = std::max(1, max_out_groups(net, scheme.coding_nodes));
    for (NodeId v : scheme.coding_nodes) {
      const auto t = static_cast<int>(net.groups(v).size());
      if (t > 0 && b.eta % t != 0) b.divisible = false;
    }
  }
  return b;
}

OutageBound::OutageBound(const Network& net, Variant scheme, std::optional<int> reduced_q)
    : scheme_(scheme), grid_(net.grid()), reduced_q_(reduced_q), sinks_(static_cast<int>(net.sinks().size())) {
  const auto zeta_of = [&](const Network& n, const std::vector<NodeId>& coding) {
    return scheme == Variant::LRnc ? std::max(1, max_out_groups(n, coding)) : 1;
  };
  if (grid_) {
    if (!reduced_q) return;
    const int span = eta_grid(*grid_) / grid_->n;
    reduced_ = ReducedInputs{grid_->n, *reduced_q, eta_grid(*grid_), zeta_of(net, net.coding_nodes()),
                             *reduced_q * span, zeta_of(net, net.coding_nodes())};
    return;
  }
  const SchemeConfig sc = SchemeConfig::for_network(net, scheme);
  full_ = bound_inputs(net, sc, 8);
  if (!reduced_q) return;
  ReducedInputs ri;
  ri.R = flow_summary(net).min_flow;
  ri.Q = *reduced_q;
  ri.eta_R = full_.eta;
  ri.zeta_R = full_.zeta;
  ri.eta_Q = 0;
  ri.zeta_Q = 1;
  for (NodeId t : net.sinks()) {
    const auto reduced = reduce_capacity(net, t, *reduced_q);
    ri.eta_Q = std::max(ri.eta_Q, eta_general(reduced.network, net.coding_nodes()).value);
    ri.zeta_Q = std::max(ri.zeta_Q, zeta_of(reduced.network, net.coding_nodes()));
  }
  reduced_ = ri;
}

std::optional<Probability> OutageBound::at(int u) const {
  try {
    if (reduced_) return reduced_outage_upper_bound(*reduced_, u, scheme_, sinks_);
    if (grid_) return complement(grid_lower_bound(*grid_, u, scheme_ == Variant::LRnc ? grid_->n : 1));
    BoundInputs b = full_;
    b.u = u;
    return complement(feasibility_lower_bound(b));
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::vector<SweepRow> sweep(const ExperimentConfig& cfg, const std::vector<int>& u_values) {
  std::optional<OutageBound> bound;
  try {
    bound.emplace(cfg.network, cfg.scheme, cfg.reduced_q);
  } catch (const Error&) {
    // No analytic column when the bound parameters cannot be measured.
  }
  std::vector<SweepRow> rows;
  for (int u : u_values) {
    ExperimentConfig c = cfg;
    c.u = u;
    SweepRow row;
    row.u = u;
    row.estimate = estimate_outage(c);
    if (bound) row.bound_upper = bound->at(u);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace rnclab
