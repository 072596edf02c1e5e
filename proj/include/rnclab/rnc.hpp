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

#include <concepts>
#include <map>
#include <span>
#include <string_view>
#include <vector>

#include "rnclab/error.hpp"
#include "rnclab/gf.hpp"
#include "rnclab/netgraph.hpp"
#include "rnclab/rng.hpp"

namespace rnclab {

enum class Variant { ERnc, LRnc, BRnc };

std::string_view to_string(Variant v);     // "e", "l", "b"
Variant parse_variant(std::string_view s);  // accepts e/l/b and E-RNC style names

/// Which nodes randomize, and how. Nodes outside coding_nodes relay.
struct SchemeConfig {
  Variant variant = Variant::ERnc;
  std::vector<NodeId> coding_nodes;

  static SchemeConfig for_network(const Network& net, Variant v) { return {v, net.coding_nodes()}; }
};

/// Dense row-major matrix over GF(2^u).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<std::vector<std::uint32_t>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  FieldElement& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  FieldElement operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<FieldElement> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const FieldElement> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  void append_row(std::span<const FieldElement> r);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<FieldElement> data_;
};

using Gev = std::vector<FieldElement>;
using DecodingMatrix = Matrix;

/// Row rank by Gaussian elimination. The span is scratch and is overwritten.
std::size_t rank_in_place(const GaloisField& f, std::span<FieldElement> data, std::size_t rows, std::size_t cols);
std::size_t rank(const GaloisField& f, const Matrix& m);
Matrix multiply(const GaloisField& f, const Matrix& a, const Matrix& b);

/// True iff every sink's matrix has rank r. Throws NoSinks on an empty map.
bool is_feasible(const GaloisField& f, const std::map<NodeId, DecodingMatrix>& matrices, std::size_t r);

/// r x q Vandermonde matrix over r distinct points; any q rows are invertible.
Matrix mds_expansion(std::size_t r, std::size_t q, const GaloisField& f);

/// rank(m * exp): the number of independent processes recoverable.
std::size_t decode_reduced(const GaloisField& f, const DecodingMatrix& m, const Matrix& exp);

// ---------------------------------------------------------------------------
// Coefficient sources

template <typename S>
concept CoefficientSource = requires(S s) {
  { s.next() } -> std::same_as<FieldElement>;
};

class RandomCoefficients {
 public:
  RandomCoefficients(const GaloisField& f, SeededRng& rng) : field_(&f), rng_(&rng) {}
  FieldElement next() { return field_->uniform_random(*rng_); }

 private:
  const GaloisField* field_;
  SeededRng* rng_;
};

/// Replays a fixed coefficient sequence (used by exhaustive enumeration).
class SequenceCoefficients {
 public:
  explicit SequenceCoefficients(std::span<const FieldElement> seq) : seq_(seq) {}
  FieldElement next() {
    if (pos_ >= seq_.size()) throw Error(ErrorCode::InvalidArgument, "coefficient sequence exhausted");
    return seq_[pos_++];
  }
  std::size_t consumed() const { return pos_; }

 private:
  std::span<const FieldElement> seq_;
  std::size_t pos_ = 0;
};

/// First `count` permutations of (0..s-1) in lexicographic order.
std::vector<std::vector<std::uint32_t>> lexicographic_permutations(std::size_t s, std::size_t count);

namespace detail {

// outputs[j] = combination j of inputs, per the variant's coefficient rule.
template <CoefficientSource Src>
void encode(const GaloisField& f, Variant variant, std::span<const std::span<const FieldElement>> inputs,
            std::span<const std::vector<std::uint32_t>> perms, std::span<const std::span<FieldElement>> outputs,
            std::vector<FieldElement>& z, Src& src) {
  const std::size_t s = inputs.size();
  for (auto out : outputs) std::fill(out.begin(), out.end(), FieldElement{});
  switch (variant) {
    case Variant::ERnc:
      for (auto out : outputs)
        for (std::size_t k = 0; k < s; ++k) f.mul_add(out, inputs[k], src.next());
      return;
    case Variant::LRnc:
      z.resize(s);
      for (auto& c : z) c = src.next();
      for (std::size_t j = 0; j < outputs.size(); ++j)
        for (std::size_t k = 0; k < s; ++k) f.mul_add(outputs[j], inputs[k], z[perms[j][k]]);
      return;
    case Variant::BRnc:
      if (outputs.empty()) return;
      for (std::size_t k = 0; k < s; ++k) f.mul_add(outputs[0], inputs[k], src.next());
      for (std::size_t j = 1; j < outputs.size(); ++j)
        std::copy(outputs[0].begin(), outputs[0].end(), outputs[j].begin());
      return;
  }
}

}  // namespace detail

/// One node's encoding step. E-RNC draws |incoming| coefficients per output,
/// L-RNC draws |incoming| once and uses permutation j for output j, B-RNC
/// draws |incoming| once and repeats the single output t times.
template <CoefficientSource Src>
std::vector<Gev> encode_node(const GaloisField& f, Variant variant, const std::vector<Gev>& incoming,
                             std::size_t t, Src& src) {
  if (incoming.empty()) throw Error(ErrorCode::EmptyIncoming, "encoding node has no incoming GEVs");
  if (t == 0) throw Error(ErrorCode::InvalidArgument, "outgoing slot count must be >= 1");
  std::vector<std::vector<std::uint32_t>> perms;
  if (variant == Variant::LRnc) perms = lexicographic_permutations(incoming.size(), t);
  const std::size_t width = incoming.front().size();
  std::vector<Gev> out(t, Gev(width));
  std::vector<std::span<const FieldElement>> in_spans(incoming.begin(), incoming.end());
  std::vector<std::span<FieldElement>> out_spans(out.begin(), out.end());
  std::vector<FieldElement> z;
  detail::encode(f, variant, std::span<const std::span<const FieldElement>>(in_spans), perms,
                 std::span<const std::span<FieldElement>>(out_spans), z, src);
  return out;
}

/// A network and scheme compiled into a flat per-generation program.
class GenerationPlan {
 public:
  GenerationPlan(const Network& net, const SchemeConfig& scheme);

  /// Number of source processes R (= source out-degree).
  std::size_t processes() const { return processes_; }
  std::size_t edge_count() const { return edge_count_; }
  /// Coefficients drawn per generation.
  std::size_t coefficient_count() const { return coefficient_count_; }
  const std::vector<NodeId>& sinks() const { return sinks_; }
  const std::vector<EdgeId>& sink_edges(std::size_t sink_index) const { return sink_edges_[sink_index]; }
  Variant variant() const { return variant_; }

  /// Propagates GEVs for one generation. `source_gevs` holds one row per
  /// source edge (R rows of `width`); `gevs` receives edge_count * width
  /// elements.
  template <CoefficientSource Src>
  void run(const GaloisField& f, std::span<const FieldElement> source_gevs, std::size_t width,
           std::vector<FieldElement>& gevs, Src& src) const;

  /// Stack the sink's incoming GEVs into `out` (rows x width, row-major).
  void gather_sink(std::size_t sink_index, std::span<const FieldElement> gevs, std::size_t width,
                   std::vector<FieldElement>& out) const;

 private:
  enum class Kind { Source, Relay, Coding };
  struct Step {
    Kind kind;
    std::vector<EdgeId> in;
    std::vector<std::vector<EdgeId>> groups;         // coding: outgoing groups
    std::vector<std::pair<EdgeId, int>> copies;      // relay: (outgoing, incoming or -1)
    std::vector<std::vector<std::uint32_t>> perms;   // L-RNC permutations
  };

  Variant variant_;
  std::size_t processes_ = 0;
  std::size_t edge_count_ = 0;
  std::size_t coefficient_count_ = 0;
  std::vector<Step> steps_;
  std::vector<NodeId> sinks_;
  std::vector<std::vector<EdgeId>> sink_edges_;
};

template <CoefficientSource Src>
void GenerationPlan::run(const GaloisField& f, std::span<const FieldElement> source_gevs, std::size_t width,
                         std::vector<FieldElement>& gevs, Src& src) const {
  gevs.assign(edge_count_ * width, FieldElement{});
  auto edge_span = [&](EdgeId e) { return std::span<FieldElement>(gevs.data() + e * width, width); };
  std::vector<std::span<const FieldElement>> ins;
  std::vector<std::span<FieldElement>> outs;
  std::vector<FieldElement> z;
  for (const Step& step : steps_) {
    switch (step.kind) {
      case Kind::Source:
        for (std::size_t k = 0; k < step.copies.size(); ++k) {
          auto dst = edge_span(step.copies[k].first);
          std::copy_n(source_gevs.begin() + static_cast<std::ptrdiff_t>(k * width), width, dst.begin());
        }
        break;
      case Kind::Relay:
        for (auto [out, in] : step.copies) {
          if (in < 0) continue;
          auto src_row = edge_span(static_cast<EdgeId>(in));
          std::copy(src_row.begin(), src_row.end(), edge_span(out).begin());
        }
        break;
      case Kind::Coding: {
        ins.clear();
        outs.clear();
        for (EdgeId e : step.in) ins.emplace_back(edge_span(e));
        for (const auto& g : step.groups) outs.push_back(edge_span(g.front()));
        detail::encode(f, variant_, std::span<const std::span<const FieldElement>>(ins), step.perms,
                       std::span<const std::span<FieldElement>>(outs), z, src);
        for (const auto& g : step.groups)
          for (std::size_t k = 1; k < g.size(); ++k) {
            auto first = edge_span(g.front());
            std::copy(first.begin(), first.end(), edge_span(g[k]).begin());
          }
        break;
      }
    }
  }
}

/// Unit-vector source GEVs (R x R identity, row-major).
std::vector<FieldElement> unit_source_gevs(std::size_t r);

/// One generation; returns each sink's stacked incoming GEVs.
template <CoefficientSource Src>
std::map<NodeId, DecodingMatrix> run_generation(const GaloisField& f, const Network& net, const SchemeConfig& scheme,
                                                const std::vector<Gev>& source_gevs, Src& src) {
  GenerationPlan plan(net, scheme);
  if (source_gevs.size() != plan.processes())
    throw Error(ErrorCode::DimensionMismatch, "need one source GEV per source edge");
  const std::size_t width = source_gevs.empty() ? 0 : source_gevs.front().size();
  std::vector<FieldElement> flat;
  for (const auto& g : source_gevs) {
    if (g.size() != width) throw Error(ErrorCode::DimensionMismatch, "source GEVs differ in length");
    flat.insert(flat.end(), g.begin(), g.end());
  }
  std::vector<FieldElement> gevs, rows;
  plan.run(f, flat, width, gevs, src);
  std::map<NodeId, DecodingMatrix> out;
  for (std::size_t i = 0; i < plan.sinks().size(); ++i) {
    plan.gather_sink(i, gevs, width, rows);
    Matrix m(0, width);
    for (std::size_t r = 0; r < plan.sink_edges(i).size(); ++r)
      m.append_row(std::span<const FieldElement>(rows.data() + r * width, width));
    out.emplace(plan.sinks()[i], std::move(m));
  }
  return out;
}

}  // namespace rnclab
