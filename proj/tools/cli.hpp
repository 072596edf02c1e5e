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

#include <iosfwd>
#include <string>
#include <vector>

namespace rnclab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;       // bad flags, unreadable or invalid config
inline constexpr int kExitSimulation = 3;  // failure while running trials

/// Entry point shared by the `rnclab` executable and the tests. `args`
/// excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "a..b" (inclusive), "a,b,c" or a single integer.
std::vector<int> parse_u_range(const std::string& text);

/// SHA-256 of a byte string, lowercase hex.
std::string sha256_hex(const std::string& bytes);

}  // namespace rnclab::cli
