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

// Small hand-built networks shared by the unit and acceptance tests.

#include <string>
#include <utility>
#include <vector>

#include "rnclab/netgraph.hpp"

namespace rnclab::testing {

inline Network build(const std::vector<std::string>& nodes,
                     const std::vector<std::pair<std::string, std::string>>& edges, const std::string& source,
                     const std::vector<std::string>& sinks, const std::vector<std::string>& coding) {
  Network net;
  for (const auto& n : nodes) net.add_node(n);
  for (const auto& [a, b] : edges) net.add_edge(*net.find(a), *net.find(b));
  net.set_source(*net.find(source));
  for (const auto& t : sinks) net.add_sink(*net.find(t));
  std::vector<NodeId> c;
  for (const auto& n : coding) c.push_back(*net.find(n));
  net.set_coding_nodes(std::move(c));
  return net;
}

// Edge ids: s-a 0, s-b 1, a-c 2, b-c 3, a-t1 4, b-t2 5, c-d 6, d-t1 7, d-t2 8.
inline Network butterfly() {
  return build({"s", "a", "b", "c", "d", "t1", "t2"},
               {{"s", "a"}, {"s", "b"}, {"a", "c"}, {"b", "c"}, {"a", "t1"}, {"b", "t2"}, {"c", "d"}, {"d", "t1"},
                {"d", "t2"}},
               "s", {"t1", "t2"}, {"c", "d"});
}

// Two coding chains; every intermediate node has one outgoing edge.
inline Network tandem() {
  return build({"s", "a1", "a2", "b1", "b2", "t"},
               {{"s", "a1"}, {"s", "b1"}, {"a1", "a2"}, {"b1", "b2"}, {"a2", "t"}, {"b2", "t"}}, "s", {"t"},
               {"a1", "a2", "b1", "b2"});
}

// s => i (3 parallel edges, ids 0..2), i => t (3 parallel edges, ids 3..5).
inline Network three_lane(std::vector<std::vector<EdgeId>> groups_at_i) {
  Network net = build({"s", "i", "t"}, {{"s", "i"}, {"s", "i"}, {"s", "i"}, {"i", "t"}, {"i", "t"}, {"i", "t"}},
                      "s", {"t"}, {"i"});
  if (!groups_at_i.empty()) net.set_hyperedges(*net.find("i"), std::move(groups_at_i));
  return net;
}

}  // namespace rnclab::testing
