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

#include "rnclab/netgraph.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <tuple>

namespace rnclab {

// ---------------------------------------------------------------------------
// Network

NodeId Network::add_node(std::string name) {
  if (index_.count(name) != 0) throw Error(ErrorCode::InvalidNetwork, "duplicate node '" + name + "'");
  const auto id = static_cast<NodeId>(names_.size());
  index_.emplace(name, id);
  names_.push_back(std::move(name));
  out_.emplace_back();
  in_.emplace_back();
  coding_mask_.push_back(0);
  return id;
}

EdgeId Network::add_edge(NodeId from, NodeId to, int label) {
  if (from >= node_count() || to >= node_count())
    throw Error(ErrorCode::InvalidNetwork, "edge endpoint out of range");
  const auto id = static_cast<EdgeId>(edges_.size());
  edges_.push_back({from, to, label});
  out_[from].push_back(id);
  in_[to].push_back(id);
  return id;
}

void Network::set_hyperedges(NodeId node, std::vector<std::vector<EdgeId>> groups) {
  if (node >= node_count()) throw Error(ErrorCode::InvalidNetwork, "hyperedge node out of range");
  hyperedges_[node] = std::move(groups);
}

void Network::set_coding_nodes(std::vector<NodeId> nodes) {
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  std::fill(coding_mask_.begin(), coding_mask_.end(), 0);
  for (NodeId v : nodes) {
    if (v >= node_count()) throw Error(ErrorCode::InvalidNetwork, "coding node out of range");
    coding_mask_[v] = 1;
  }
  coding_nodes_ = std::move(nodes);
}

bool Network::is_coding(NodeId v) const { return v < coding_mask_.size() && coding_mask_[v] != 0; }

std::optional<NodeId> Network::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::vector<EdgeId>> Network::groups(NodeId v) const {
  if (auto it = hyperedges_.find(v); it != hyperedges_.end()) return it->second;
  std::vector<std::vector<EdgeId>> singles;
  for (EdgeId e : out_.at(v)) singles.push_back({e});
  return singles;
}

Network Network::without_edges(const std::vector<EdgeId>& removed) const {
  std::vector<char> drop(edges_.size(), 0);
  for (EdgeId e : removed) drop.at(e) = 1;

  Network out;
  for (const auto& n : names_) out.add_node(n);
  std::vector<EdgeId> remap(edges_.size(), std::numeric_limits<EdgeId>::max());
  for (EdgeId e = 0; e < edges_.size(); ++e)
    if (!drop[e]) remap[e] = out.add_edge(edges_[e].from, edges_[e].to, edges_[e].label);
  out.source_ = source_;
  out.sinks_ = sinks_;
  for (const auto& [node, groups] : hyperedges_) {
    std::vector<std::vector<EdgeId>> kept;
    for (const auto& g : groups) {
      std::vector<EdgeId> k;
      for (EdgeId e : g)
        if (e < edges_.size() && !drop[e]) k.push_back(remap[e]);
      if (!k.empty()) kept.push_back(std::move(k));
    }
    out.hyperedges_[node] = std::move(kept);
  }
  out.set_coding_nodes(coding_nodes_);
  return out;
}

// ---------------------------------------------------------------------------
// Validation

ValidationReport validate(const Network& net) {
  ValidationReport report;
  const std::size_t n = net.node_count();
  auto issue = [&](ErrorCode c, std::string m) { report.issues.push_back({c, std::move(m)}); };

  if (n == 0) {
    issue(ErrorCode::InvalidNetwork, "network has no nodes");
    return report;
  }
  if (net.source() >= n) issue(ErrorCode::InvalidNetwork, "source out of range");
  if (net.sinks().empty()) issue(ErrorCode::NoSinks, "network has no sinks");
  for (NodeId t : net.sinks()) {
    if (t >= n) issue(ErrorCode::InvalidNetwork, "sink out of range");
    else if (t == net.source()) issue(ErrorCode::InvalidNetwork, "source cannot be a sink");
  }
  if (!report.ok()) return report;
  if (!net.incoming(net.source()).empty())
    issue(ErrorCode::InvalidNetwork, "source '" + net.name(net.source()) + "' has incoming edges");

  // Kahn's algorithm; FIFO over ascending ids keeps the order deterministic.
  std::vector<int> indeg(n, 0);
  for (const Edge& e : net.edges()) ++indeg[e.to];
  std::deque<NodeId> ready;
  for (NodeId v = 0; v < n; ++v)
    if (indeg[v] == 0) ready.push_back(v);
  while (!ready.empty()) {
    const NodeId v = ready.front();
    ready.pop_front();
    report.topological_order.push_back(v);
    for (EdgeId e : net.outgoing(v))
      if (--indeg[net.edge(e).to] == 0) ready.push_back(net.edge(e).to);
  }
  if (report.topological_order.size() != n) {
    report.topological_order.clear();
    issue(ErrorCode::CyclicGraph, "directed graph contains a cycle");
  }

  std::vector<char> seen(n, 0);
  std::deque<NodeId> frontier{net.source()};
  seen[net.source()] = 1;
  while (!frontier.empty()) {
    const NodeId v = frontier.front();
    frontier.pop_front();
    for (EdgeId e : net.outgoing(v)) {
      const NodeId w = net.edge(e).to;
      if (!seen[w]) {
        seen[w] = 1;
        frontier.push_back(w);
      }
    }
  }
  for (NodeId t : net.sinks())
    if (!seen[t]) issue(ErrorCode::UnreachableSink, "sink '" + net.name(t) + "' is unreachable from the source");

  for (NodeId v = 0; v < n; ++v) {
    if (!net.has_explicit_groups(v)) continue;
    std::vector<int> hits(net.edge_count(), 0);
    bool bad = false;
    for (const auto& g : net.groups(v)) {
      if (g.empty()) bad = true;
      for (EdgeId e : g) {
        if (e >= net.edge_count() || net.edge(e).from != v) {
          bad = true;
          continue;
        }
        ++hits[e];
      }
    }
    for (EdgeId e : net.outgoing(v))
      if (hits[e] != 1) bad = true;
    if (bad) issue(ErrorCode::MalformedHyperedge, "hyperedge groups of '" + net.name(v) + "' do not partition its outgoing edges");
  }
  return report;
}

std::vector<NodeId> require_valid(const Network& net) {
  auto report = validate(net);
  if (!report.ok()) throw Error(report.issues.front().code, report.issues.front().message);
  return std::move(report.topological_order);
}

// ---------------------------------------------------------------------------
// Flow machinery

namespace {

struct Arc {
  std::uint32_t to;
  int cap;
  int cost;
  std::uint32_t rev;
  bool forward;
  int edge;   // original edge carried by this arc, -1 for node->hyperedge arcs
  int group;  // index into FlowGraph::groups for node->hyperedge arcs
};

struct FlowGraph {
  std::vector<std::vector<Arc>> adj;
  std::vector<std::vector<EdgeId>> groups;
  std::uint32_t source = 0;

  std::uint32_t add_vertex() {
    adj.emplace_back();
    return static_cast<std::uint32_t>(adj.size() - 1);
  }

  void add_arc(std::uint32_t a, std::uint32_t b, int cost, int edge, int group) {
    const auto ra = static_cast<std::uint32_t>(adj[a].size());
    const auto rb = static_cast<std::uint32_t>(adj[b].size());
    adj[a].push_back({b, 1, cost, rb, true, edge, group});
    adj[b].push_back({a, 0, -cost, ra, false, -1, -1});
  }
};

FlowGraph build_flow_graph(const Network& net, const std::vector<char>* coded) {
  FlowGraph g;
  g.adj.resize(net.node_count());
  g.source = net.source();
  for (NodeId v = 0; v < net.node_count(); ++v) {
    const int cost = (coded != nullptr && (*coded)[v]) ? -1 : 0;
    for (const auto& group : net.groups(v)) {
      if (group.size() == 1) {
        const EdgeId e = group.front();
        g.add_arc(v, net.edge(e).to, cost, static_cast<int>(e), -1);
        continue;
      }
      const std::uint32_t hub = g.add_vertex();
      g.groups.push_back(group);
      g.add_arc(v, hub, cost, -1, static_cast<int>(g.groups.size() - 1));
      for (EdgeId e : group) g.add_arc(hub, net.edge(e).to, 0, static_cast<int>(e), -1);
    }
  }
  return g;
}

// BFS augmenting path; returns false when the sink is unreachable.
bool augment_bfs(FlowGraph& g, std::uint32_t sink) {
  const std::size_t n = g.adj.size();
  std::vector<std::pair<std::uint32_t, std::uint32_t>> parent(n, {UINT32_MAX, 0});
  std::deque<std::uint32_t> q{g.source};
  parent[g.source] = {g.source, 0};
  while (!q.empty() && parent[sink].first == UINT32_MAX) {
    const auto v = q.front();
    q.pop_front();
    for (std::uint32_t i = 0; i < g.adj[v].size(); ++i) {
      const Arc& a = g.adj[v][i];
      if (a.cap > 0 && parent[a.to].first == UINT32_MAX) {
        parent[a.to] = {v, i};
        q.push_back(a.to);
      }
    }
  }
  if (parent[sink].first == UINT32_MAX) return false;
  for (std::uint32_t v = sink; v != g.source;) {
    auto [p, i] = parent[v];
    Arc& a = g.adj[p][i];
    a.cap -= 1;
    g.adj[v][a.rev].cap += 1;
    v = p;
  }
  return true;
}

// Bellman-Ford shortest augmenting path by cost.
bool augment_min_cost(FlowGraph& g, std::uint32_t sink, long& total_cost) {
  const std::size_t n = g.adj.size();
  constexpr long kInf = std::numeric_limits<long>::max() / 4;
  std::vector<long> dist(n, kInf);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> parent(n, {UINT32_MAX, 0});
  dist[g.source] = 0;
  for (std::size_t round = 0; round < n; ++round) {
    bool changed = false;
    for (std::uint32_t v = 0; v < n; ++v) {
      if (dist[v] == kInf) continue;
      for (std::uint32_t i = 0; i < g.adj[v].size(); ++i) {
        const Arc& a = g.adj[v][i];
        if (a.cap > 0 && dist[v] + a.cost < dist[a.to]) {
          dist[a.to] = dist[v] + a.cost;
          parent[a.to] = {v, i};
          changed = true;
        }
      }
    }
    if (!changed) break;
  }
  if (dist[sink] == kInf) return false;
  for (std::uint32_t v = sink; v != g.source;) {
    auto [p, i] = parent[v];
    Arc& a = g.adj[p][i];
    a.cap -= 1;
    g.adj[v][a.rev].cap += 1;
    v = p;
  }
  total_cost += dist[sink];
  return true;
}

std::vector<std::vector<EdgeId>> decompose(FlowGraph g, std::uint32_t sink, int value) {
  std::vector<std::vector<EdgeId>> paths;
  for (int k = 0; k < value; ++k) {
    std::vector<EdgeId> path;
    std::uint32_t v = g.source;
    while (v != sink) {
      bool moved = false;
      for (Arc& a : g.adj[v]) {
        if (!a.forward || a.cap != 0) continue;  // forward arcs with flow have cap 0
        a.cap = 1;                               // consume the unit
        if (a.edge >= 0) path.push_back(static_cast<EdgeId>(a.edge));
        v = a.to;
        moved = true;
        break;
      }
      if (!moved) break;
    }
    paths.push_back(std::move(path));
  }
  return paths;
}

}  // namespace

FlowResult max_flow(const Network& net, NodeId sink) {
  require_valid(net);
  if (std::find(net.sinks().begin(), net.sinks().end(), sink) == net.sinks().end())
    throw Error(ErrorCode::InvalidArgument, "'" + net.name(sink) + "' is not a sink");
  FlowGraph g = build_flow_graph(net, nullptr);
  FlowResult result;
  result.sink = sink;
  while (augment_bfs(g, sink)) ++result.value;
  if (result.value == 0) throw Error(ErrorCode::UnreachableSink, "no flow reaches '" + net.name(sink) + "'");
  result.paths = decompose(std::move(g), sink, result.value);
  return result;
}

FlowSummary flow_summary(const Network& net) {
  FlowSummary s;
  s.min_flow = std::numeric_limits<int>::max();
  for (NodeId t : net.sinks()) {
    s.per_sink.push_back(max_flow(net, t));
    s.min_flow = std::min(s.min_flow, s.per_sink.back().value);
  }
  if (s.per_sink.empty()) s.min_flow = 0;
  return s;
}

ReducedNetwork reduce_capacity(const Network& net, NodeId sink, int q) {
  const int full = max_flow(net, sink).value;
  if (q < 1 || q >= full)
    throw Error(ErrorCode::InvalidTarget,
                "target capacity " + std::to_string(q) + " must lie in [1, " + std::to_string(full - 1) + "]");

  FlowGraph g = build_flow_graph(net, nullptr);
  while (augment_bfs(g, sink)) {
  }
  // Sink side of the cut: vertices that still reach the sink in the residual graph.
  std::vector<char> sink_side(g.adj.size(), 0);
  std::deque<std::uint32_t> frontier{sink};
  sink_side[sink] = 1;
  while (!frontier.empty()) {
    const auto w = frontier.front();
    frontier.pop_front();
    for (const Arc& back : g.adj[w]) {
      const Arc& a = g.adj[back.to][back.rev];  // arc back.to -> w
      if (a.cap > 0 && !sink_side[back.to]) {
        sink_side[back.to] = 1;
        frontier.push_back(back.to);
      }
    }
  }

  using Key = std::tuple<NodeId, NodeId, EdgeId>;
  std::vector<std::pair<Key, std::vector<EdgeId>>> cut;
  for (std::uint32_t v = 0; v < g.adj.size(); ++v) {
    if (sink_side[v]) continue;
    for (const Arc& a : g.adj[v]) {
      if (!a.forward || !sink_side[a.to]) continue;
      std::vector<EdgeId> element;
      if (a.edge >= 0) element.push_back(static_cast<EdgeId>(a.edge));
      else element = g.groups[static_cast<std::size_t>(a.group)];
      const Edge& first = net.edge(element.front());
      cut.push_back({{first.from, first.to, element.front()}, std::move(element)});
    }
  }
  std::sort(cut.begin(), cut.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  ReducedNetwork out;
  for (int k = 0; k < full - q; ++k)
    out.deleted.insert(out.deleted.end(), cut[static_cast<std::size_t>(k)].second.begin(),
                       cut[static_cast<std::size_t>(k)].second.end());
  std::sort(out.deleted.begin(), out.deleted.end());
  out.network = net.without_edges(out.deleted);
  const int got = max_flow(out.network, sink).value;
  if (got != q)
    throw Error(ErrorCode::InvalidTarget, "cut deletion produced max-flow " + std::to_string(got));
  return out;
}

// ---------------------------------------------------------------------------
// Grids

void GridSpec::check() const {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "grid dimension must be >= 2");
  if (nu.size() != static_cast<std::size_t>(n))
    throw Error(ErrorCode::InvalidArgument, "grid needs exactly n destination coordinates");
  for (int x : nu)
    if (x < 1) throw Error(ErrorCode::InvalidArgument, "grid destination coordinates must be >= 1");
}

std::vector<int> grid_coords(const GridSpec& spec, NodeId v) {
  std::vector<int> c(static_cast<std::size_t>(spec.n));
  for (int d = 0; d < spec.n; ++d) {
    const auto radix = static_cast<NodeId>(spec.nu[static_cast<std::size_t>(d)] + 1);
    c[static_cast<std::size_t>(d)] = static_cast<int>(v % radix);
    v /= radix;
  }
  return c;
}

NodeId grid_node(const GridSpec& spec, const std::vector<int>& coords) {
  NodeId v = 0;
  for (int d = spec.n - 1; d >= 0; --d)
    v = v * static_cast<NodeId>(spec.nu[static_cast<std::size_t>(d)] + 1) +
        static_cast<NodeId>(coords[static_cast<std::size_t>(d)]);
  return v;
}

bool is_on_axis(const GridSpec& spec, NodeId v) {
  const auto c = grid_coords(spec, v);
  return std::any_of(c.begin(), c.end(), [](int x) { return x == 0; });
}

Network gen_grid(const GridSpec& spec) {
  spec.check();
  std::size_t count = 1;
  for (int x : spec.nu) count *= static_cast<std::size_t>(x + 1);

  Network net;
  for (NodeId v = 0; v < count; ++v) {
    const auto c = grid_coords(spec, v);
    std::string name;
    for (std::size_t d = 0; d < c.size(); ++d) name += (d ? "," : "") + std::to_string(c[d]);
    net.add_node(std::move(name));
  }
  std::vector<NodeId> coding;
  for (NodeId v = 0; v < count; ++v) {
    auto c = grid_coords(spec, v);
    for (int d = 0; d < spec.n; ++d) {
      auto& x = c[static_cast<std::size_t>(d)];
      if (x == spec.nu[static_cast<std::size_t>(d)]) continue;
      ++x;
      net.add_edge(v, grid_node(spec, c), d);
      --x;
    }
  }
  const auto sink = static_cast<NodeId>(count - 1);
  for (NodeId v = 1; v < sink; ++v)
    if (!is_on_axis(spec, v)) coding.push_back(v);
  net.set_source(0);
  net.add_sink(sink);
  net.set_coding_nodes(std::move(coding));
  net.set_grid(spec);
  return net;
}

int eta_grid(const GridSpec& spec) {
  spec.check();
  return spec.n * (std::accumulate(spec.nu.begin(), spec.nu.end(), 0) - 2);
}

EtaResult eta_general(const Network& net, const std::vector<NodeId>& coding_nodes) {
  require_valid(net);
  std::vector<char> coded(net.node_count(), 0);
  for (NodeId v : coding_nodes) coded.at(v) = 1;
  const int flow = flow_summary(net).min_flow;

  EtaResult result;
  for (NodeId t : net.sinks()) {
    FlowGraph g = build_flow_graph(net, &coded);
    long cost = 0;
    for (int k = 0; k < flow; ++k)
      if (!augment_min_cost(g, t, cost)) break;
    result.value = std::max(result.value, static_cast<int>(-cost));
  }
  return result;
}

int max_out_groups(const Network& net, const std::vector<NodeId>& coding_nodes) {
  int zeta = 0;
  for (NodeId v : coding_nodes) zeta = std::max(zeta, static_cast<int>(net.groups(v).size()));
  return zeta;
}

}  // namespace rnclab
