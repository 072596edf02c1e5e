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

#include "rnclab/network_io.hpp"

#include <fstream>

namespace rnclab {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

std::string node_key(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  fail("node identifiers must be strings or integers");
}

NodeId lookup(const Network& net, const json& j) {
  const auto key = node_key(j);
  auto id = net.find(key);
  if (!id) fail("unknown node '" + key + "'");
  return *id;
}

GridSpec grid_from_json(const json& g) {
  if (!g.is_object() || !g.contains("n") || !g.contains("nu")) fail("grid requires keys n and nu");
  GridSpec spec;
  try {
    spec.n = g.at("n").get<int>();
    spec.nu = g.at("nu").get<std::vector<int>>();
  } catch (const json::exception& e) {
    fail(std::string("bad grid spec: ") + e.what());
  }
  try {
    spec.check();
  } catch (const Error& e) {
    fail(e.what());
  }
  return spec;
}

}  // namespace

Network network_from_json(const json& doc) {
  if (!doc.is_object()) fail("network document must be a JSON object");
  std::optional<GridSpec> grid;
  if (doc.contains("grid")) grid = grid_from_json(doc.at("grid"));
  if (!doc.contains("nodes")) {
    if (!grid) fail("network document needs either nodes/edges or grid");
    return gen_grid(*grid);
  }

  Network net;
  try {
    for (const auto& n : doc.at("nodes")) net.add_node(node_key(n));
    for (const auto& e : doc.at("edges")) {
      if (!e.is_array() || e.size() < 2 || e.size() > 3) fail("edges must be [origin, destination] or [origin, destination, label]");
      const int label = e.size() == 3 ? e[2].get<int>() : -1;
      net.add_edge(lookup(net, e[0]), lookup(net, e[1]), label);
    }
    if (!doc.contains("source")) fail("missing source");
    net.set_source(lookup(net, doc.at("source")));
    if (!doc.contains("sinks") || !doc.at("sinks").is_array()) fail("missing sinks list");
    for (const auto& t : doc.at("sinks")) net.add_sink(lookup(net, t));
    if (doc.contains("hyperedges")) {
      for (const auto& [key, groups] : doc.at("hyperedges").items()) {
        std::vector<std::vector<EdgeId>> gs;
        for (const auto& g : groups) gs.push_back(g.get<std::vector<EdgeId>>());
        net.set_hyperedges(lookup(net, json(key)), std::move(gs));
      }
    }
    if (doc.contains("coding_nodes")) {
      std::vector<NodeId> coding;
      for (const auto& c : doc.at("coding_nodes")) coding.push_back(lookup(net, c));
      net.set_coding_nodes(std::move(coding));
    }
  } catch (const json::exception& e) {
    fail(std::string("malformed network document: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw;
    fail(e.what());
  }

  if (grid) {
    const Network expected = gen_grid(*grid);
    if (expected.edges() != net.edges() || expected.node_count() != net.node_count())
      fail("explicit graph does not match its grid spec");
    net.set_grid(*grid);
  }
  return net;
}

json network_to_json(const Network& net) {
  json doc;
  doc["nodes"] = json::array();
  for (NodeId v = 0; v < net.node_count(); ++v) doc["nodes"].push_back(net.name(v));
  doc["edges"] = json::array();
  for (const Edge& e : net.edges()) {
    json edge = json::array({net.name(e.from), net.name(e.to)});
    if (e.label >= 0) edge.push_back(e.label);
    doc["edges"].push_back(std::move(edge));
  }
  doc["source"] = net.name(net.source());
  doc["sinks"] = json::array();
  for (NodeId t : net.sinks()) doc["sinks"].push_back(net.name(t));
  doc["hyperedges"] = json::object();
  for (NodeId v = 0; v < net.node_count(); ++v)
    if (net.has_explicit_groups(v)) doc["hyperedges"][net.name(v)] = net.groups(v);
  doc["coding_nodes"] = json::array();
  for (NodeId v : net.coding_nodes()) doc["coding_nodes"].push_back(net.name(v));
  if (net.grid()) doc["grid"] = {{"n", net.grid()->n}, {"nu", net.grid()->nu}};
  return doc;
}

json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail("'" + path.string() + "': " + e.what());
  }
}

Network load_network(const std::filesystem::path& path) { return network_from_json(load_json(path)); }

}  // namespace rnclab
