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

#include "cli.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "rnclab/bounds.hpp"
#include "rnclab/montecarlo.hpp"
#include "rnclab/network_io.hpp"

#ifndef RNCLAB_VERSION
#define RNCLAB_VERSION "0.0.0"
#endif

namespace rnclab::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

// Raised for anything the user can fix by changing flags or config files.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, sep);) out.push_back(item);
  return out;
}

int to_int(const std::string& s) {
  std::size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(s, &pos);
  } catch (const std::exception&) {
    throw UsageError("not an integer: '" + s + "'");
  }
  if (pos != s.size()) throw UsageError("not an integer: '" + s + "'");
  return v;
}

std::string utc_timestamp(std::chrono::system_clock::time_point tp) {
  const std::time_t t = std::chrono::system_clock::to_time_t(tp);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_file(const fs::path& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open " + path.string() + " for writing");
  f << body;
  if (!f.flush()) throw UsageError("failed writing " + path.string());
}

// ---- simulate ------------------------------------------------------------

struct SimulateArgs {
  std::string config;
  std::string schemes;
  std::string u;
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<int> reduced_q;
  std::optional<unsigned> threads;
  std::string out;
};

struct Plan {
  json network_doc;
  Network network;
  std::vector<Variant> schemes{Variant::ERnc};
  std::vector<int> u_values;
  std::uint64_t trials = 10000;
  std::uint64_t seed = 0;
  std::optional<int> reduced_q;
  unsigned threads = 0;

  // Everything that determines the result table. Threads are left out on
  // purpose: the tally does not depend on them.
  json snapshot() const {
    json schemes_j = json::array();
    for (Variant v : schemes) schemes_j.push_back(std::string(to_string(v)));
    json exp = {{"schemes", schemes_j}, {"u", u_values}, {"trials", trials}, {"seed", seed}};
    exp["reduced_q"] = reduced_q ? json(*reduced_q) : json(nullptr);
    return {{"network", network_doc}, {"experiment", exp}};
  }
};

std::vector<Variant> parse_schemes(const std::string& text) {
  std::vector<Variant> out;
  for (const auto& s : split(text, ',')) {
    try {
      out.push_back(parse_variant(s));
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
  }
  if (out.empty()) throw UsageError("no schemes given");
  return out;
}

std::string u_text(const json& j) {
  if (j.is_number_integer()) return std::to_string(j.get<int>());
  if (j.is_string()) return j.get<std::string>();
  if (j.is_array()) {
    std::string s;
    for (const auto& x : j) s += (s.empty() ? "" : ",") + std::to_string(x.get<int>());
    return s;
  }
  throw UsageError("experiment.u must be an integer, string or array");
}

Plan resolve(const SimulateArgs& a) {
  Plan p;
  json doc;
  try {
    doc = load_json(a.config);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  try {
    if (doc.contains("network")) {
      p.network_doc = doc.at("network");
    } else if (doc.contains("network_file")) {
      p.network_doc = load_json(fs::path(a.config).parent_path() / doc.at("network_file").get<std::string>());
    } else {
      p.network_doc = doc;
      p.network_doc.erase("experiment");
    }
    p.network = network_from_json(p.network_doc);
    if (doc.contains("experiment")) {
      const json& e = doc.at("experiment");
      if (e.contains("schemes")) {
        const json& s = e.at("schemes");
        std::string text;
        if (s.is_string()) text = s.get<std::string>();
        else
          for (const auto& x : s) text += (text.empty() ? "" : ",") + x.get<std::string>();
        p.schemes = parse_schemes(text);
      }
      if (e.contains("u")) p.u_values = parse_u_range(u_text(e.at("u")));
      if (e.contains("trials")) p.trials = e.at("trials").get<std::uint64_t>();
      if (e.contains("seed")) p.seed = e.at("seed").get<std::uint64_t>();
      if (e.contains("reduced_q") && !e.at("reduced_q").is_null()) p.reduced_q = e.at("reduced_q").get<int>();
      if (e.contains("threads")) p.threads = e.at("threads").get<unsigned>();
    }
  } catch (const json::exception& e) {
    throw UsageError(std::string("config: ") + e.what());
  } catch (const Error& e) {
    throw UsageError(e.what());
  }

  if (!a.schemes.empty()) p.schemes = parse_schemes(a.schemes);
  if (!a.u.empty()) p.u_values = parse_u_range(a.u);
  if (a.trials) p.trials = *a.trials;
  if (a.seed) p.seed = *a.seed;
  if (a.reduced_q) p.reduced_q = *a.reduced_q;
  if (a.threads) p.threads = *a.threads;
  if (p.u_values.empty()) throw UsageError("no field sizes given (--u or experiment.u)");

  p.network_doc = network_to_json(p.network);
  for (int u : p.u_values) {
    ExperimentConfig cfg{p.network, p.schemes.front(), u, p.trials, p.seed, p.reduced_q, p.threads};
    try {
      cfg.check();
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
  }
  return p;
}

std::string render_csv(const Plan& p, const std::string& config_digest,
                       const std::vector<std::pair<Variant, std::vector<SweepRow>>>& results) {
  std::ostringstream os;
  os << "# tool: rnclab " << RNCLAB_VERSION << '\n';
  os << "# config_sha256: " << config_digest << '\n';
  os << "# seed: " << p.seed << '\n';
  os << "# reduced_q: " << (p.reduced_q ? std::to_string(*p.reduced_q) : "none") << '\n';
  os << "scheme,u,trials,failures,p_hat,ci_lo,ci_hi,bound_upper,log2_p\n";
  for (const auto& [variant, rows] : results) {
    for (const auto& r : rows) {
      const auto& e = r.estimate;
      os << to_string(variant) << ',' << r.u << ',' << e.trials << ',' << e.failures << ',' << fmt(e.p_hat) << ','
         << fmt(e.ci_lo) << ',' << fmt(e.ci_hi) << ',' << (r.bound_upper ? fmt(r.bound_upper->value) : "NA") << ','
         << (e.log2_p ? fmt(*e.log2_p) : "censored") << '\n';
    }
  }
  return os.str();
}

int cmd_simulate(const SimulateArgs& a, std::ostream& out, std::ostream& err) {
  const auto started = std::chrono::system_clock::now();
  const auto t0 = std::chrono::steady_clock::now();
  Plan p;
  try {
    p = resolve(a);
  } catch (const UsageError& e) {
    err << "simulate: " << e.what() << '\n';
    return kExitUsage;
  }

  const json snapshot = p.snapshot();
  const std::string snapshot_text = snapshot.dump();
  const std::string config_digest = sha256_hex(snapshot_text);

  std::vector<std::pair<Variant, std::vector<SweepRow>>> results;
  try {
    for (Variant v : p.schemes) {
      ExperimentConfig cfg{p.network, v, p.u_values.front(), p.trials, p.seed, p.reduced_q, p.threads};
      results.emplace_back(v, sweep(cfg, p.u_values));
    }
  } catch (const std::exception& e) {
    err << "simulate: " << e.what() << '\n';
    return kExitSimulation;
  }

  const std::string csv = render_csv(p, config_digest, results);
  const fs::path out_path = a.out;
  const fs::path manifest_path = out_path.string() + ".manifest.json";
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  json manifest = {
      {"tool", "rnclab"},
      {"version", RNCLAB_VERSION},
      {"config", snapshot},
      {"config_sha256", config_digest},
      {"master_seed", p.seed},
      {"started_at", utc_timestamp(started)},
      {"wall_clock_seconds", seconds},
      {"threads", worker_count(p.threads)},
      {"outputs", {{out_path.filename().string(), sha256_hex(csv)}}},
  };
  try {
    write_file(out_path, csv);
    write_file(manifest_path, manifest.dump(2) + "\n");
  } catch (const UsageError& e) {
    err << "simulate: " << e.what() << '\n';
    return kExitUsage;
  }
  out << "wrote " << out_path.string() << " (" << results.size() * p.u_values.size() << " rows)\n";
  return kExitOk;
}

// ---- bound ---------------------------------------------------------------

struct BoundArgs {
  std::string grid;
  std::optional<int> eta, zeta, sinks;
  std::optional<int> R, Q, eta_r, eta_q, zeta_r, zeta_q;
  std::string scheme = "e";
  std::string u;
};

GridSpec parse_grid(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError("--grid expects n,nu1:nu2:...");
  GridSpec spec;
  spec.n = to_int(text.substr(0, comma));
  for (const auto& s : split(text.substr(comma + 1), ':')) spec.nu.push_back(to_int(s));
  return spec;
}

void print_row(std::ostream& out, int u, const Probability& p) {
  out << u << ',' << fmt(p.value) << ',' << fmt(p.log2) << '\n';
}

int cmd_bound(const BoundArgs& a, std::ostream& out, std::ostream& err) {
  const bool grid_mode = !a.grid.empty();
  const bool eta_mode = a.eta.has_value();
  const bool reduced_mode = a.R || a.Q || a.eta_r || a.eta_q || a.zeta_r || a.zeta_q;
  try {
    if (grid_mode + eta_mode + reduced_mode != 1)
      throw UsageError("use exactly one of --grid, --eta/--zeta/--D, or --R/--Q/--eta-r/--eta-q");
    if (grid_mode && (a.zeta || a.sinks)) throw UsageError("--zeta/--D do not apply to --grid");
    const Variant scheme = parse_variant(a.scheme);
    const std::vector<int> us = a.u.empty() ? std::vector<int>{} : parse_u_range(a.u);

    if (reduced_mode) {
      if (!(a.R && a.Q && a.eta_r && a.eta_q)) throw UsageError("reduced-rate bound needs --R, --Q, --eta-r and --eta-q");
      const ReducedInputs ri{*a.R, *a.Q, *a.eta_r, a.zeta_r.value_or(1), *a.eta_q, a.zeta_q.value_or(1)};
      out << "gain," << fmt(reliability_gain(ri, scheme)) << '\n';
      if (!us.empty()) out << "u,outage_upper,log2\n";
      for (int u : us) print_row(out, u, reduced_outage_upper_bound(ri, u, scheme, a.sinks.value_or(1)));
      return kExitOk;
    }
    if (us.empty()) throw UsageError("--u is required");
    out << "u,feasibility_lower,log2\n";
    if (grid_mode) {
      const GridSpec spec = parse_grid(a.grid);
      const int j = scheme == Variant::LRnc ? spec.n : 1;
      for (int u : us) print_row(out, u, grid_lower_bound(spec, u, j));
      return kExitOk;
    }
    BoundInputs b;
    b.eta = *a.eta;
    b.zeta = a.zeta.value_or(1);
    b.sinks = a.sinks.value_or(1);
    b.divisible = b.zeta > 0 && b.eta % b.zeta == 0;
    for (int u : us) {
      b.u = u;
      print_row(out, u, feasibility_lower_bound(b));
    }
    return kExitOk;
  } catch (const std::exception& e) {
    err << "bound: " << e.what() << '\n';
    return kExitUsage;
  }
}

// ---- gen-grid ------------------------------------------------------------

int cmd_gen_grid(int n, const std::string& nu, const std::string& out_path, std::ostream& out, std::ostream& err) {
  try {
    GridSpec spec;
    spec.n = n;
    for (const auto& s : split(nu, ',')) spec.nu.push_back(to_int(s));
    const Network net = gen_grid(spec);
    write_file(out_path, network_to_json(net).dump(2) + "\n");
    out << "wrote " << out_path << " (" << net.node_count() << " nodes, " << net.edge_count() << " edges)\n";
    return kExitOk;
  } catch (const std::exception& e) {
    err << "gen-grid: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace

std::vector<int> parse_u_range(const std::string& text) {
  std::vector<int> out;
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const int a = to_int(text.substr(0, dots)), b = to_int(text.substr(dots + 2));
    if (a > b) throw UsageError("empty u range " + text);
    for (int u = a; u <= b; ++u) out.push_back(u);
  } else {
    for (const auto& s : split(text, ',')) out.push_back(to_int(s));
  }
  if (out.empty()) throw UsageError("empty u list");
  for (int u : out)
    if (u < 1 || u > kMaxFieldBits) throw UsageError("u must lie in 1..16, got " + std::to_string(u));
  return out;
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(2 * len);
  for (unsigned i = 0; i < len; ++i) {
    hex.push_back(kHex[md[i] >> 4]);
    hex.push_back(kHex[md[i] & 0xF]);
  }
  return hex;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Randomized network coding simulator and bounds", "rnclab"};
  app.set_version_flag("--version", RNCLAB_VERSION);
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo outage sweep over field sizes");
  simulate->add_option("--config", sim.config, "Network or experiment file (JSON)")->required();
  simulate->add_option("--schemes", sim.schemes, "Comma list of e,l,b");
  simulate->add_option("--u", sim.u, "Field bit-widths: a..b, a,b,c or a single value");
  simulate->add_option("--trials", sim.trials, "Trials per (scheme, u)");
  simulate->add_option("--seed", sim.seed, "Master seed");
  simulate->add_option("--reduced-q", sim.reduced_q, "Send Q < R processes through an MDS expansion");
  simulate->add_option("--threads", sim.threads, "Worker threads (0 = all cores)");
  simulate->add_option("--out", sim.out, "Result CSV path")->required();

  BoundArgs bnd;
  auto* bound = app.add_subcommand("bound", "Evaluate analytic bounds");
  bound->add_option("--grid", bnd.grid, "Grid n,nu1:nu2:...");
  bound->add_option("--eta", bnd.eta, "Coded edges per flow solution");
  bound->add_option("--zeta", bnd.zeta, "Maximum hyperedges per coding node");
  bound->add_option("--D", bnd.sinks, "Number of sinks");
  bound->add_option("--R", bnd.R, "Full rate");
  bound->add_option("--Q", bnd.Q, "Reduced rate");
  bound->add_option("--eta-r", bnd.eta_r);
  bound->add_option("--eta-q", bnd.eta_q);
  bound->add_option("--zeta-r", bnd.zeta_r);
  bound->add_option("--zeta-q", bnd.zeta_q);
  bound->add_option("--scheme", bnd.scheme, "e, l or b");
  bound->add_option("--u", bnd.u, "Field bit-widths");

  int grid_n = 0;
  std::string grid_nu, grid_out;
  auto* gen = app.add_subcommand("gen-grid", "Write an n-dimensional grid network file");
  gen->add_option("--n", grid_n, "Dimensions")->required();
  gen->add_option("--nu", grid_nu, "Comma list of destination coordinates")->required();
  gen->add_option("--out", grid_out, "Output path")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    app.exit(e, err, err);
    return kExitUsage;
  }

  try {
    if (*simulate) return cmd_simulate(sim, out, err);
    if (*bound) return cmd_bound(bnd, out, err);
    return cmd_gen_grid(grid_n, grid_nu, grid_out, out, err);
  } catch (const UsageError& e) {
    err << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace rnclab::cli
