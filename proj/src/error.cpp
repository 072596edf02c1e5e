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

#include "rnclab/error.hpp"

namespace rnclab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ZeroInverse: return "ZeroInverse";
    case ErrorCode::ReduciblePolynomial: return "ReduciblePolynomial";
    case ErrorCode::CyclicGraph: return "CyclicGraph";
    case ErrorCode::UnreachableSink: return "UnreachableSink";
    case ErrorCode::MalformedHyperedge: return "MalformedHyperedge";
    case ErrorCode::InvalidNetwork: return "InvalidNetwork";
    case ErrorCode::InvalidTarget: return "InvalidTarget";
    case ErrorCode::PermutationOverflow: return "PermutationOverflow";
    case ErrorCode::EmptyIncoming: return "EmptyIncoming";
    case ErrorCode::NoSinks: return "NoSinks";
    case ErrorCode::FieldTooSmall: return "FieldTooSmall";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DegreeTooHigh: return "DegreeTooHigh";
    case ErrorCode::DivisibilityViolated: return "DivisibilityViolated";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace rnclab
