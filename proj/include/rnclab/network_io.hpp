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

#include <filesystem>

#include "json.hpp"
#include "rnclab/netgraph.hpp"

namespace rnclab {

/// Network file format (JSON):
///
///   {
///     "nodes":        ["s", "a", ...],          // strings or integers
///     "edges":        [["s","a"], ["a","b",1]], // [origin, destination, label?]
///     "source":       "s",
///     "sinks":        ["t1", "t2"],
///     "hyperedges":   {"i": [[3,4],[5]]},       // per-node edge-index groups
///     "coding_nodes": ["c", "d"],
///     "grid":         {"n": 3, "nu": [3,3,4]}   // optional
///   }
///
/// A document carrying only "grid" is expanded with gen_grid. When both an
/// explicit graph and "grid" are present they must agree.
Network network_from_json(const nlohmann::json& doc);
nlohmann::json network_to_json(const Network& net);

Network load_network(const std::filesystem::path& path);
nlohmann::json load_json(const std::filesystem::path& path);

}  // namespace rnclab
