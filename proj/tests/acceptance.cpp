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

// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "networks.hpp"
#include "rnclab/bounds.hpp"
#include "rnclab/montecarlo.hpp"

using namespace rnclab;
namespace fs = std::filesystem;

namespace {

// Pinned tolerances.
constexpr double kSigmaBand = 3.0;           // criterion 2
constexpr double kMinPassRate = 0.99;        // criterion 2
constexpr double kSlopeMax = -0.8;           // criterion 4(b)
constexpr std::uint64_t kMinFailures = 10;   // criteria 4(b), 5(b)
constexpr double kGainTarget = 2.0;          // criterion 5(a)
constexpr double kGainTolerance = 0.3;       // criterion 5(a)
constexpr double kSimGainMin = 1.5;          // criterion 5(b)
constexpr double kExactSlack = 1e-12;        // float noise when exact == bound

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void report(const std::string& id, const std::string& title, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++failures;
  std::printf("%s %-4s %s [%.1fs] %s\n", o.pass ? "PASS" : "FAIL", id.c_str(), title.c_str(), s, o.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

ExperimentConfig experiment(const Network& net, Variant v, int u, std::uint64_t trials, std::uint64_t seed,
                            std::optional<int> q = std::nullopt) {
  ExperimentConfig c;
  c.network = net;
  c.scheme = v;
  c.u = u;
  c.trials = trials;
  c.master_seed = seed;
  c.reduced_q = q;
  return c;
}

const Network& grid334() {
  static const Network g = gen_grid(GridSpec{3, {3, 3, 4}});
  return g;
}

bool overlap(const OutageEstimate& a, const OutageEstimate& b) { return a.ci_lo <= b.ci_hi && b.ci_lo <= a.ci_hi; }

// ---------------------------------------------------------------------------

Outcome field_correctness() {
  for (int u : {1, 2, 3, 4, 8, 16}) {
    const GaloisField f(u);
    SeededRng rng(1000 + u);
    for (int i = 0; i < 10000; ++i) {
      const auto a = f.uniform_random(rng), b = f.uniform_random(rng), c = f.uniform_random(rng);
      const bool ok = f.add(a, b) == f.add(b, a) && f.mul(a, b) == f.mul(b, a) &&
                      f.add(f.add(a, b), c) == f.add(a, f.add(b, c)) &&
                      f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)) &&
                      f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)) && f.add(a, FieldElement{}) == a &&
                      f.mul(a, FieldElement(1)) == a && f.add(a, a).is_zero() &&
                      (a.is_zero() || f.mul(a, f.inv(a)) == FieldElement(1));
      if (!ok) return {false, "axiom violated at u=" + std::to_string(u)};
    }
  }
  for (int u = 1; u <= 8; ++u) {
    const GaloisField f(u);
    for (std::uint32_t a = 1; a < f.size(); ++a)
      if (f.mul(FieldElement(a), f.inv(FieldElement(a))) != FieldElement(1))
        return {false, "inverse wrong at u=" + std::to_string(u)};
  }
  return {true, "10^4 triples x 6 fields, exhaustive inverses u<=8"};
}

Outcome oracle_equivalence() {
  const Network bf = testing::butterfly();
  const auto scheme = SchemeConfig::for_network(bf, Variant::ERnc);
  int runs = 0, ok = 0;
  std::string worst;
  double worst_z = 0;
  for (int u : {1, 2}) {
    const double exact = exact_outage(bf, scheme, u);
    const double sigma = std::sqrt(exact * (1 - exact) / 1e5);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const auto e = estimate_outage(experiment(bf, Variant::ERnc, u, 100000, seed));
      const double z = std::abs(e.p_hat - exact) / sigma;
      ++runs;
      ok += z <= kSigmaBand ? 1 : 0;
      worst_z = std::max(worst_z, z);
    }
  }
  const double rate = static_cast<double>(ok) / runs;
  return {rate >= kMinPassRate, fmt("%.0f/%.0f runs within 3 sigma (max |z| = %.2f)", ok, runs, worst_z)};
}

Outcome bound_dominance() {
  struct Instance {
    std::string name;
    Network net;
    std::vector<Variant> schemes;
    std::vector<int> us;
  };
  const std::vector<Instance> instances{
      {"butterfly", testing::butterfly(), {Variant::ERnc, Variant::BRnc}, {2, 3, 4}},
      {"tandem", testing::tandem(), {Variant::ERnc, Variant::LRnc, Variant::BRnc}, {1, 2, 3, 4}},
      {"three-lane", testing::three_lane({}), {Variant::ERnc, Variant::LRnc, Variant::BRnc}, {2}},
      {"grid(2,1)", gen_grid(GridSpec{2, {2, 1}}), {Variant::ERnc, Variant::LRnc, Variant::BRnc}, {2, 3, 4}},
      {"grid(2,2)", gen_grid(GridSpec{2, {2, 2}}), {Variant::ERnc, Variant::LRnc, Variant::BRnc}, {2, 3}},
  };
  int checked = 0, skipped = 0;
  for (const auto& inst : instances)
    for (Variant v : inst.schemes)
      for (int u : inst.us) {
        const auto scheme = SchemeConfig::for_network(inst.net, v);
        BoundInputs b;
        try {
          b = bound_inputs(inst.net, scheme, u);
        } catch (const Error& e) {
          if (e.code() != ErrorCode::InvalidNetwork) throw;
          ++skipped;  // min cut below R under this scheme
          continue;
        }
        if (std::ldexp(1.0, u) <= static_cast<double>(b.sinks) * b.zeta) {
          ++skipped;
          continue;
        }
        const double feasible = 1 - exact_outage(inst.net, scheme, u);
        const double lb = feasibility_lower_bound(b).value;
        ++checked;
        if (feasible + kExactSlack < lb)
          return {false, inst.name + " " + std::string(to_string(v)) + fmt(" u=%.0f: exact %.6g < bound %.6g", u,
                                                                                 feasible, lb)};
      }

  const GridSpec spec{3, {3, 3, 4}};
  double min_margin = 1;
  for (auto [v, j] : {std::pair{Variant::LRnc, 3}, {Variant::BRnc, 1}, {Variant::ERnc, 1}})
    for (int u : {4, 6, 8}) {
      const auto e = estimate_outage(experiment(grid334(), v, u, 100000, 31 + u));
      const double feasible_hi = 1 - e.ci_lo;
      const double lb = grid_lower_bound(spec, u, j).value;
      min_margin = std::min(min_margin, feasible_hi - lb);
      if (feasible_hi < lb)
        return {false, std::string("grid ") + std::string(to_string(v)) + fmt(" u=%.0f: feasibility %.6g < bound %.6g",
                                                                              u, 1 - e.p_hat, lb)};
    }
  return {true, std::to_string(checked) + " exact instances (" + std::to_string(skipped) +
                    " outside the bound's preconditions); grid (3,3,4) u in {4,6,8}, min margin " +
                    fmt("%.4f", min_margin)};
}

Outcome grid_scheme_comparison() {
  std::map<Variant, std::vector<OutageEstimate>> est;
  for (Variant v : {Variant::ERnc, Variant::LRnc, Variant::BRnc})
    for (int u = 1; u <= 8; ++u) est[v].push_back(estimate_outage(experiment(grid334(), v, u, 100000, 400 + u)));

  std::string bad_a;
  for (int u = 1; u <= 8; ++u) {
    const auto& e = est[Variant::ERnc][u - 1];
    const auto& l = est[Variant::LRnc][u - 1];
    const auto& b = est[Variant::BRnc][u - 1];
    const bool l_ge_b = l.p_hat >= b.p_hat || overlap(l, b);
    const bool b_eq_e = overlap(b, e);
    if (!l_ge_b || !b_eq_e)
      bad_a += fmt(" u=%.0f(E %.4f B %.4f", u, e.p_hat, b.p_hat) + fmt(" L %.4f)", l.p_hat);
  }
  std::string slopes;
  bool ok_b = true;
  for (Variant v : {Variant::ERnc, Variant::LRnc, Variant::BRnc}) {
    std::vector<OutagePoint> pts;
    for (int u = 1; u <= 8; ++u)
      if (est[v][u - 1].failures >= kMinFailures) pts.push_back({u, est[v][u - 1].p_hat});
    const double s = log2_slope(pts);
    ok_b = ok_b && s <= kSlopeMax;
    slopes += std::string(" ") + std::string(to_string(v)) + fmt("=%.3f", s);
  }
  const bool ok_a = bad_a.empty();
  return {ok_a && ok_b, std::string("(a) ") + (ok_a ? "ok" : "violated at" + bad_a) + "; (b) slopes" + slopes};
}

Outcome reduced_rate_bound_gain() {
  const GridSpec g{3, {3, 3, 4}};
  const ReducedInputs ri{3, 2, eta_grid(g), 1, 2 * eta_grid(g) / 3, 1};
  std::vector<OutagePoint> full, reduced;
  for (int u = 6; u <= 10; ++u) {
    full.push_back({u, 1 - grid_lower_bound(g, u, 1).value});
    reduced.push_back({u, reduced_outage_upper_bound(ri, u, Variant::BRnc, 1).value});
  }
  const double gain = empirical_gain(full, reduced, full.size());
  return {std::abs(gain - kGainTarget) <= kGainTolerance,
          fmt("bound slope ratio over u=6..10 is %.4f, target %.1f +/- %.1f", gain, kGainTarget, kGainTolerance)};
}

Outcome reduced_rate_simulated_gain() {
  std::vector<OutagePoint> full, reduced;
  std::vector<std::uint64_t> nf, nr;
  for (int u = 2; u <= 8; ++u) {
    const auto f = estimate_outage(experiment(grid334(), Variant::BRnc, u, 100000, 500 + u));
    const auto r = estimate_outage(experiment(grid334(), Variant::BRnc, u, 1000000, 600 + u, 2));
    if (f.failures < kMinFailures || r.failures < kMinFailures) continue;
    full.push_back({u, f.p_hat});
    reduced.push_back({u, r.p_hat});
  }
  const double gain = empirical_gain(full, reduced, 4);
  return {gain >= kSimGainMin, fmt("B-RNC, Q=2 vs R=3: slope ratio %.3f over u=%.0f..%.0f", gain,
                                   full.size() >= 4 ? full[full.size() - 4].u : full.front().u, full.back().u)};
}

Outcome zero_bound_dominance() {
  int checked = 0;
  for (int u : {2, 3}) {
    const GaloisField f(u);
    const std::uint32_t q = f.size();
    // Exponent multisets, non-increasing, each in 1..3, total <= 6.
    std::vector<std::vector<int>> monomials;
    std::function<void(std::vector<int>&, int, int)> gen = [&](std::vector<int>& cur, int max_part, int left) {
      if (!cur.empty()) monomials.push_back(cur);
      for (int p = std::min(max_part, left); p >= 1; --p) {
        cur.push_back(p);
        gen(cur, p, left - p);
        cur.pop_back();
      }
    };
    std::vector<int> cur;
    gen(cur, 3, 6);
    for (const auto& m : monomials) {
      const std::size_t k = m.size();
      std::vector<std::uint32_t> z(k, 0);
      std::uint64_t zeros = 0, total = 0;
      for (;;) {
        FieldElement v(1);
        for (std::size_t i = 0; i < k; ++i) v = f.mul(v, f.pow(FieldElement(z[i]), static_cast<std::uint64_t>(m[i])));
        zeros += v.is_zero() ? 1 : 0;
        ++total;
        std::size_t i = 0;
        while (i < k && ++z[i] == q) z[i++] = 0;
        if (i == k) break;
      }
      int big_m = 0;
      for (int e : m) big_m += e;
      const double exact = static_cast<double>(zeros) / static_cast<double>(total);
      const double bound = polynomial_zero_upper_bound(big_m, m.front(), u).value;
      ++checked;
      if (exact > bound + kExactSlack) return {false, fmt("u=%.0f M=%.0f: exact %.6g exceeds bound", u, big_m, exact)};
    }
  }
  return {true, std::to_string(checked) + " monomials over GF(4) and GF(8)"};
}

Outcome divisor_monotone() {
  int checked = 0;
  for (int eta : {6, 12, 24})
    for (int d : {1, 2, 4})
      for (int u : {4, 8, 12}) {
        double prev = 2.0;
        for (int lambda = 1; lambda <= eta; ++lambda) {
          if (eta % lambda != 0 || std::ldexp(1.0, u) <= d * lambda) continue;
          const double v = feasibility_lower_bound({d, lambda, eta, u, true}).value;
          ++checked;
          if (v > prev) return {false, fmt("increase at eta=%.0f D=%.0f u=%.0f", eta, d, u)};
          prev = v;
        }
      }
  return {true, std::to_string(checked) + " (eta, D, u, lambda) points"};
}

Outcome mds_property() {
  const GaloisField f(4);
  int checked = 0;
  for (std::size_t r = 1; r <= 6; ++r)
    for (std::size_t q = 1; q <= r; ++q) {
      const Matrix v = mds_expansion(r, q, f);
      std::vector<char> pick(r, 0);
      std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(q), 1);
      do {
        Matrix sub(0, q);
        for (std::size_t i = 0; i < r; ++i)
          if (pick[i]) sub.append_row(v.row(i));
        ++checked;
        if (rank(f, sub) != q) return {false, fmt("singular submatrix at R=%.0f Q=%.0f", r, q)};
      } while (std::prev_permutation(pick.begin(), pick.end()));
    }
  return {true, std::to_string(checked) + " submatrices over GF(16)"};
}

Outcome determinism() {
  unsetenv("RNCLAB_THREADS");
  const fs::path dir = fs::temp_directory_path() / "rnclab_acceptance";
  fs::create_directories(dir);
  const fs::path net = dir / "grid334.json";
  std::ostringstream sink;
  if (cli::run({"gen-grid", "--n", "3", "--nu", "3,3,4", "--out", net.string()}, sink, sink) != 0)
    return {false, "gen-grid failed"};
  std::string reference;
  int runs = 0;
  for (const char* workers : {"1", "4", "8"})
    for (int rep = 0; rep < 2; ++rep) {
      const fs::path out = dir / "run.csv";
      fs::remove(out);
      const int code = cli::run({"simulate", "--config", net.string(), "--schemes", "e,l,b", "--u", "1..4", "--trials",
                                 "5000", "--seed", "2024", "--threads", workers, "--out", out.string()},
                                sink, sink);
      if (code != 0) return {false, "simulate exited with " + std::to_string(code)};
      std::ifstream f(out, std::ios::binary);
      const std::string body{std::istreambuf_iterator<char>(f), {}};
      if (runs++ == 0) reference = body;
      else if (body != reference)
        return {false, std::string("CSV differs with ") + workers + " workers"};
    }
  return {true, std::to_string(runs) + " runs byte-identical across 1, 4, 8 workers"};
}

Outcome special_case_equivalence() {
  const Network net = testing::tandem();
  std::string detail;
  for (int u : {1, 2}) {
    const double e = exact_outage(net, SchemeConfig::for_network(net, Variant::ERnc), u);
    const double l = exact_outage(net, SchemeConfig::for_network(net, Variant::LRnc), u);
    const double b = exact_outage(net, SchemeConfig::for_network(net, Variant::BRnc), u);
    if (e != l || l != b) return {false, fmt("u=%.0f: E %.6g L %.6g", u, e, l) + fmt(" B %.6g", b)};
    detail += fmt(" GF(%.0f): %.6g", std::ldexp(1.0, u), e);
  }
  return {true, "E = L = B;" + detail};
}

}  // namespace

int main() {
  report("1", "field correctness", field_correctness);
  report("2", "butterfly enumeration vs Monte Carlo", oracle_equivalence);
  report("3", "bound dominance", bound_dominance);
  report("4", "grid (3,3,4) scheme comparison and decay", grid_scheme_comparison);
  report("5a", "reduced-rate gain on analytic bounds", reduced_rate_bound_gain);
  report("5b", "reduced-rate gain in simulation", reduced_rate_simulated_gain);
  report("6", "polynomial zero bound dominance", zero_bound_dominance);
  report("7", "bound monotone over divisors of eta", divisor_monotone);
  report("8", "MDS expansion submatrices", mds_property);
  report("9", "simulate determinism across workers", determinism);
  report("10", "tandem scheme equivalence", special_case_equivalence);
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
