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

#include "rnclab/rnc.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace rnclab {

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::ERnc: return "e";
    case Variant::LRnc: return "l";
    case Variant::BRnc: return "b";
  }
  return "?";
}

Variant parse_variant(std::string_view s) {
  if (s == "e" || s == "E" || s == "E-RNC" || s == "e-rnc") return Variant::ERnc;
  if (s == "l" || s == "L" || s == "L-RNC" || s == "l-rnc") return Variant::LRnc;
  if (s == "b" || s == "B" || s == "B-RNC" || s == "b-rnc") return Variant::BRnc;
  throw Error(ErrorCode::InvalidArgument, "unknown scheme '" + std::string(s) + "' (expected e, l or b)");
}

// ---------------------------------------------------------------------------
// Matrices

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = FieldElement(1);
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<std::uint32_t>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error(ErrorCode::DimensionMismatch, "ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = FieldElement(rows[r][c]);
  }
  return m;
}

void Matrix::append_row(std::span<const FieldElement> r) {
  if (r.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "row width mismatch");
  data_.insert(data_.end(), r.begin(), r.end());
  ++rows_;
}

std::size_t rank_in_place(const GaloisField& f, std::span<FieldElement> a, std::size_t rows, std::size_t cols) {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot * cols + c].is_zero()) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank)
      std::swap_ranges(a.begin() + static_cast<std::ptrdiff_t>(pivot * cols),
                       a.begin() + static_cast<std::ptrdiff_t>((pivot + 1) * cols),
                       a.begin() + static_cast<std::ptrdiff_t>(rank * cols));
    const FieldElement inv = f.inv(a[rank * cols + c]);
    auto prow = a.subspan(rank * cols, cols);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      const FieldElement lead = a[r * cols + c];
      if (lead.is_zero()) continue;
      f.mul_add(a.subspan(r * cols, cols), prow, f.mul(lead, inv));
    }
    ++rank;
  }
  return rank;
}

std::size_t rank(const GaloisField& f, const Matrix& m) {
  std::vector<FieldElement> scratch(m.rows() * m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) std::copy(m.row(r).begin(), m.row(r).end(), scratch.begin() + static_cast<std::ptrdiff_t>(r * m.cols()));
  return rank_in_place(f, scratch, m.rows(), m.cols());
}

Matrix multiply(const GaloisField& f, const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "matrix product dimension mismatch");
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) f.mul_add(out.row(i), b.row(k), a(i, k));
  return out;
}

bool is_feasible(const GaloisField& f, const std::map<NodeId, DecodingMatrix>& matrices, std::size_t r) {
  if (matrices.empty()) throw Error(ErrorCode::NoSinks, "feasibility needs at least one sink");
  return std::all_of(matrices.begin(), matrices.end(), [&](const auto& kv) { return rank(f, kv.second) == r; });
}

Matrix mds_expansion(std::size_t r, std::size_t q, const GaloisField& f) {
  if (q < 1 || q > r) throw Error(ErrorCode::InvalidArgument, "expansion needs 1 <= q <= r");
  if (r > f.size())
    throw Error(ErrorCode::FieldTooSmall, "need " + std::to_string(r) + " distinct points, field has " + std::to_string(f.size()));
  Matrix m(r, q);
  for (std::size_t i = 0; i < r; ++i) {
    FieldElement x(1);
    for (std::size_t c = 0; c < q; ++c) {
      m(i, c) = x;
      x = f.mul(x, FieldElement(static_cast<std::uint32_t>(i)));
    }
  }
  return m;
}

std::size_t decode_reduced(const GaloisField& f, const DecodingMatrix& m, const Matrix& exp) {
  if (m.cols() != exp.rows())
    throw Error(ErrorCode::DimensionMismatch, "decoding matrix width must equal expansion rows");
  return rank(f, multiply(f, m, exp));
}

std::vector<std::vector<std::uint32_t>> lexicographic_permutations(std::size_t s, std::size_t count) {
  std::vector<std::uint32_t> p(s);
  std::iota(p.begin(), p.end(), 0U);
  std::vector<std::vector<std::uint32_t>> out;
  for (std::size_t j = 0; j < count; ++j) {
    out.push_back(p);
    if (!std::next_permutation(p.begin(), p.end()) && j + 1 < count)
      throw Error(ErrorCode::PermutationOverflow,
                  std::to_string(count) + " outputs exceed the " + std::to_string(j + 1) + " permutations of " +
                      std::to_string(s) + " coefficients");
  }
  return out;
}

std::vector<FieldElement> unit_source_gevs(std::size_t r) {
  std::vector<FieldElement> out(r * r);
  for (std::size_t i = 0; i < r; ++i) out[i * r + i] = FieldElement(1);
  return out;
}

// ---------------------------------------------------------------------------
// Generation plan

namespace {

// Relay forwarding: a single input is copied everywhere. With several inputs,
// an outgoing edge labelled d takes the input labelled d; failing that, the
// input with the next larger label (wrapping to the smallest).
int relay_choice(const Network& net, const std::vector<EdgeId>& in, int out_label) {
  if (in.empty()) return -1;
  if (in.size() == 1) return static_cast<int>(in.front());
  if (out_label >= 0)
    for (EdgeId e : in)
      if (net.edge(e).label == out_label) return static_cast<int>(e);
  auto key = [&](EdgeId e) {
    const int l = net.edge(e).label;
    return std::tuple(l > out_label ? 0 : 1, l, e);
  };
  return static_cast<int>(*std::min_element(in.begin(), in.end(), [&](EdgeId a, EdgeId b) { return key(a) < key(b); }));
}

}  // namespace

GenerationPlan::GenerationPlan(const Network& net, const SchemeConfig& scheme)
    : variant_(scheme.variant), edge_count_(net.edge_count()), sinks_(net.sinks()) {
  const auto order = require_valid(net);
  std::vector<char> coding(net.node_count(), 0);
  for (NodeId v : scheme.coding_nodes) coding.at(v) = 1;
  processes_ = net.outgoing(net.source()).size();

  for (NodeId v : order) {
    const auto& in = net.incoming(v);
    if (net.outgoing(v).empty()) continue;
    Step step;
    if (v == net.source()) {
      step.kind = Kind::Source;
      for (EdgeId e : net.outgoing(v)) step.copies.emplace_back(e, -1);
    } else if (coding[v]) {
      step.kind = Kind::Coding;
      step.in = in;
      step.groups = net.groups(v);
      if (in.empty())
        throw Error(ErrorCode::EmptyIncoming, "coding node '" + net.name(v) + "' has no incoming edges");
      const std::size_t s = in.size(), t = step.groups.size();
      switch (variant_) {
        case Variant::ERnc: coefficient_count_ += s * t; break;
        case Variant::LRnc:
          step.perms = lexicographic_permutations(s, t);
          coefficient_count_ += s;
          break;
        case Variant::BRnc: coefficient_count_ += s; break;
      }
    } else {
      step.kind = Kind::Relay;
      for (const auto& g : net.groups(v)) {
        const int pick = relay_choice(net, in, net.edge(g.front()).label);
        for (EdgeId e : g) step.copies.emplace_back(e, pick);
      }
    }
    steps_.push_back(std::move(step));
  }
  for (NodeId t : sinks_) sink_edges_.push_back(net.incoming(t));
}

void GenerationPlan::gather_sink(std::size_t sink_index, std::span<const FieldElement> gevs, std::size_t width,
                                 std::vector<FieldElement>& out) const {
  const auto& edges = sink_edges_[sink_index];
  out.resize(edges.size() * width);
  for (std::size_t r = 0; r < edges.size(); ++r)
    std::copy_n(gevs.begin() + static_cast<std::ptrdiff_t>(edges[r] * width), width,
                out.begin() + static_cast<std::ptrdiff_t>(r * width));
}

}  // namespace rnclab
