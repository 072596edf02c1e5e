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
#include <string>
#include <unordered_map>
#include <vector>

#include "rnclab/error.hpp"

namespace rnclab {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

/// Directed unit-capacity edge. `label` is an optional routing tag (-1 when
/// absent); grid edges carry their coordinate dimension.
struct Edge {
  NodeId from = 0;
  NodeId to = 0;
  int label = -1;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// n-dimensional grid with the sink at (nu_1, ..., nu_n).
struct GridSpec {
  int n = 2;
  std::vector<int> nu;

  void check() const;
  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Acyclic multicast network. Parallel edges are allowed. Outgoing edges of
/// a node are partitioned into hyperedge groups; a node without an explicit
/// partition has one singleton group per outgoing edge.
class Network {
 public:
  Network() = default;

  NodeId add_node(std::string name);
  EdgeId add_edge(NodeId from, NodeId to, int label = -1);
  void set_source(NodeId s) { source_ = s; }
  void add_sink(NodeId t) { sinks_.push_back(t); }
  void set_hyperedges(NodeId node, std::vector<std::vector<EdgeId>> groups);
  void set_coding_nodes(std::vector<NodeId> nodes);
  void set_grid(GridSpec spec) { grid_ = std::move(spec); }

  std::size_t node_count() const { return names_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  const std::string& name(NodeId v) const { return names_.at(v); }
  std::optional<NodeId> find(const std::string& name) const;

  NodeId source() const { return source_; }
  const std::vector<NodeId>& sinks() const { return sinks_; }
  const std::vector<NodeId>& coding_nodes() const { return coding_nodes_; }
  bool is_coding(NodeId v) const;
  const std::optional<GridSpec>& grid() const { return grid_; }

  /// Edge ids in increasing order.
  const std::vector<EdgeId>& outgoing(NodeId v) const { return out_.at(v); }
  const std::vector<EdgeId>& incoming(NodeId v) const { return in_.at(v); }

  /// Hyperedge groups of v (explicit partition, or singletons).
  std::vector<std::vector<EdgeId>> groups(NodeId v) const;
  bool has_explicit_groups(NodeId v) const { return hyperedges_.count(v) != 0; }

  /// Copy with the given edges removed; edge ids are renumbered densely and
  /// hyperedge groups are filtered accordingly.
  Network without_edges(const std::vector<EdgeId>& removed) const;

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, NodeId> index_;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> out_, in_;
  NodeId source_ = 0;
  std::vector<NodeId> sinks_;
  std::unordered_map<NodeId, std::vector<std::vector<EdgeId>>> hyperedges_;
  std::vector<NodeId> coding_nodes_;
  std::vector<char> coding_mask_;
  std::optional<GridSpec> grid_;
};

struct ValidationIssue {
  ErrorCode code;
  std::string message;
};

struct ValidationReport {
  std::vector<NodeId> topological_order;  // empty when cyclic
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
};

ValidationReport validate(const Network& net);

/// Throws the first issue of validate() as an Error.
std::vector<NodeId> require_valid(const Network& net);

struct FlowResult {
  NodeId sink = 0;
  int value = 0;
  /// Edge-disjoint source->sink paths, each as a list of edge ids.
  std::vector<std::vector<EdgeId>> paths;
};

struct FlowSummary {
  std::vector<FlowResult> per_sink;
  int min_flow = 0;
};

/// Unit-capacity max-flow where each hyperedge group is one cut element.
FlowResult max_flow(const Network& net, NodeId sink);
FlowSummary flow_summary(const Network& net);

struct ReducedNetwork {
  Network network;
  std::vector<EdgeId> deleted;  // ids in the original network
};

/// Deletes R - q edges of the min-cut closest to `sink`, smallest
/// (origin, destination, id) first, until max-flow to `sink` is q.
ReducedNetwork reduce_capacity(const Network& net, NodeId sink, int q);

/// Grid generator. Node ids are mixed-radix coordinates with dimension 0
/// least significant. Off-axis nodes other than the sink are coding nodes.
Network gen_grid(const GridSpec& spec);
std::vector<int> grid_coords(const GridSpec& spec, NodeId v);
NodeId grid_node(const GridSpec& spec, const std::vector<int>& coords);
bool is_on_axis(const GridSpec& spec, NodeId v);

/// n * (sum(nu) - 2)
int eta_grid(const GridSpec& spec);

struct EtaResult {
  int value = 0;
  bool lower_estimate = false;
};

/// Maximum number of flow edges leaving a coding node over all edge-disjoint
/// flow solutions of value R (the overall min-cut), maximized over sinks.
/// Solved exactly as a min-cost flow with cost -1 on coded edges.
EtaResult eta_general(const Network& net, const std::vector<NodeId>& coding_nodes);

/// Max over coding nodes of the number of outgoing hyperedge groups.
int max_out_groups(const Network& net, const std::vector<NodeId>& coding_nodes);

}  // namespace rnclab
