// Copyright 2026 The multinv Authors
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

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "multinv/gf2.hpp"
#include "multinv/permutation.hpp"

namespace multinv {

/// Simple undirected graph with a party label per vertex. Deleted vertices
/// keep their index and are marked absent.
class ColoredGraph {
 public:
  ColoredGraph() = default;
  explicit ColoredGraph(std::size_t n, std::string party = "A")
      : adj_(n, n), party_(n, std::move(party)), present_(n) {
    for (std::size_t v = 0; v < n; ++v) present_.set(v);
  }
  ColoredGraph(std::size_t n, std::vector<std::string> parties) : adj_(n, n), party_(std::move(parties)), present_(n) {
    if (party_.size() != n) throw std::invalid_argument("ColoredGraph: party label count");
    for (std::size_t v = 0; v < n; ++v) present_.set(v);
  }

  std::size_t size() const { return party_.size(); }
  std::size_t live_count() const { return present_.popcount(); }
  bool present(std::size_t v) const { return present_.get(v); }
  const BitVector& present_mask() const { return present_; }

  const std::string& party(std::size_t v) const { return party_[v]; }
  const std::vector<std::string>& parties() const { return party_; }
  void set_party(std::size_t v, std::string p) { party_[v] = std::move(p); }

  const BitMatrix& adjacency() const { return adj_; }
  const BitVector& neighbors(std::size_t v) const { return adj_.row(v); }
  std::size_t degree(std::size_t v) const { return adj_.row(v).popcount(); }
  bool has_edge(std::size_t a, std::size_t b) const { return adj_.get(a, b); }

  void add_edge(std::size_t a, std::size_t b) { set_edge(a, b, true); }
  void toggle_edge(std::size_t a, std::size_t b) { set_edge(a, b, !has_edge(a, b)); }
  void set_edge(std::size_t a, std::size_t b, bool on) {
    check(a);
    check(b);
    if (a == b) throw std::invalid_argument("ColoredGraph: self loops are not allowed");
    adj_.set(a, b, on);
    adj_.set(b, a, on);
  }

  std::vector<std::pair<std::size_t, std::size_t>> edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t a = 0; a < size(); ++a) {
      const auto& row = adj_.row(a);
      for (std::size_t b = row.find_next(a + 1); b < size(); b = row.find_next(b + 1)) out.emplace_back(a, b);
    }
    return out;
  }

  /// Toggles every edge between two distinct neighbours of a.
  void local_complement_in_place(std::size_t a) {
    check(a);
    const BitVector nb = adj_.row(a);
    for (std::size_t b = nb.find_first(); b < size(); b = nb.find_next(b + 1)) {
      adj_.row(b) ^= nb;
      adj_.row(b).flip(b);
    }
  }

  /// Removes a and all its edges; a keeps its index but is marked absent.
  void delete_vertex(std::size_t a) {
    check(a);
    const BitVector nb = adj_.row(a);
    for (std::size_t b = nb.find_first(); b < size(); b = nb.find_next(b + 1)) adj_.set(b, a, false);
    adj_.row(a) = BitVector(size());
    present_.set(a, false);
  }

  /// Drops absent vertices and renumbers the rest in index order.
  ColoredGraph compacted() const {
    std::vector<std::size_t> keep = present_.ones();
    std::vector<std::string> parties;
    for (auto v : keep) parties.push_back(party_[v]);
    ColoredGraph out(keep.size(), std::move(parties));
    for (std::size_t i = 0; i < keep.size(); ++i) {
      for (std::size_t j = i + 1; j < keep.size(); ++j) {
        if (has_edge(keep[i], keep[j])) out.add_edge(i, j);
      }
    }
    return out;
  }

  bool operator==(const ColoredGraph& o) const {
    return adj_ == o.adj_ && party_ == o.party_ && present_.to_string() == o.present_.to_string();
  }

  std::vector<std::string> party_names() const {
    std::vector<std::string> p;
    for (std::size_t v = 0; v < size(); ++v) {
      if (present(v)) p.push_back(party_[v]);
    }
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
    return p;
  }

 private:
  void check(std::size_t v) const {
    if (v >= size() || !present_.get(v)) throw std::out_of_range("ColoredGraph: invalid vertex " + std::to_string(v));
  }

  BitMatrix adj_;
  std::vector<std::string> party_;
  BitVector present_;
};

inline ColoredGraph local_complement(ColoredGraph g, std::size_t a) {
  g.local_complement_in_place(a);
  return g;
}

/// The five single-qubit operators produced by Pauli measurements on graphs:
/// sigma_z and the square roots of -i sigma_z, +i sigma_z, -i sigma_y, +i sigma_y.
enum class LocalUnitary { Sz, SqrtMinusIZ, SqrtPlusIZ, SqrtMinusIY, SqrtPlusIY };

inline const char* local_unitary_name(LocalUnitary u) {
  switch (u) {
    case LocalUnitary::Sz: return "Sz";
    case LocalUnitary::SqrtMinusIZ: return "SqrtMinusIZ";
    case LocalUnitary::SqrtPlusIZ: return "SqrtPlusIZ";
    case LocalUnitary::SqrtMinusIY: return "SqrtMinusIY";
    case LocalUnitary::SqrtPlusIY: return "SqrtPlusIY";
  }
  return "?";
}

struct LocalUnitaryTag {
  LocalUnitary kind;
  std::size_t vertex;
  bool operator==(const LocalUnitaryTag&) const = default;
};

enum class PauliBasis { X, Y, Z };

inline char basis_char(PauliBasis b) { return b == PauliBasis::X ? 'x' : (b == PauliBasis::Y ? 'y' : 'z'); }

/// Result of projecting vertex a onto <basis, sign|: the remaining amplitude is
/// phase * 2^{-1/2} * U |reduced>, with U the product of the byproducts.
/// `phase_eighths` is the exponent of e^{i pi/4} in `phase`.
struct MeasurementOutcome {
  bool collapsed = false;
  ColoredGraph reduced;
  std::vector<LocalUnitaryTag> byproducts;
  int phase_eighths = 0;
  bool isolated = false;  // isolated x,+ case: amplitude is exactly U|reduced>
  std::size_t b0 = SIZE_MAX;
};

/// Chooses the neighbour b0 used by an x measurement at a.
using B0Rule = std::function<std::size_t(const ColoredGraph&, std::size_t)>;

inline std::size_t lowest_neighbor(const ColoredGraph& g, std::size_t a) { return g.neighbors(a).find_first(); }

/// In-place form of `measure`; on collapse the graph is left unspecified.
inline MeasurementOutcome measure_in_place(ColoredGraph& g, std::size_t a, PauliBasis basis, int sign,
                                           const B0Rule& rule = lowest_neighbor) {
  if (a >= g.size() || !g.present(a)) throw std::out_of_range("measure: invalid vertex " + std::to_string(a));
  if (sign != 1 && sign != -1) throw std::invalid_argument("measure: sign must be +1 or -1");
  MeasurementOutcome out;
  const BitVector na = g.neighbors(a);
  const std::size_t n = g.size();
  auto each = [n](const BitVector& s, auto&& f) {
    for (std::size_t v = s.find_first(); v < n; v = s.find_next(v + 1)) f(v);
  };
  switch (basis) {
    case PauliBasis::Z:
      if (sign < 0) each(na, [&](std::size_t b) { out.byproducts.push_back({LocalUnitary::Sz, b}); });
      g.delete_vertex(a);
      break;
    case PauliBasis::Y: {
      const std::size_t deg = na.popcount();
      g.local_complement_in_place(a);
      g.delete_vertex(a);
      LocalUnitary u = sign > 0 ? LocalUnitary::SqrtMinusIZ : LocalUnitary::SqrtPlusIZ;
      each(na, [&](std::size_t b) { out.byproducts.push_back({u, b}); });
      out.phase_eighths = (((sign * (static_cast<int>(deg) - 1)) % 8) + 8) % 8;
      break;
    }
    case PauliBasis::X: {
      if (na.none()) {
        if (sign < 0) {
          out.collapsed = true;
          return out;
        }
        out.isolated = true;
        g.delete_vertex(a);
        break;
      }
      const std::size_t b0 = rule(g, a);
      if (b0 >= n || !na.get(b0)) throw std::logic_error("measure: b0 rule returned a non-neighbour");
      out.b0 = b0;
      const BitVector nb0 = g.neighbors(b0);
      BitVector diff(n);
      if (sign > 0) {
        out.byproducts.push_back({LocalUnitary::SqrtPlusIY, b0});
        diff = nb0;
        diff = ~diff;
        diff &= na;
        diff.set(b0, false);
      } else {
        out.byproducts.push_back({LocalUnitary::SqrtMinusIY, b0});
        diff = na;
        diff = ~diff;
        diff &= nb0;
        diff.set(a, false);
      }
      each(diff, [&](std::size_t b) { out.byproducts.push_back({LocalUnitary::Sz, b}); });
      g.local_complement_in_place(b0);
      g.local_complement_in_place(a);
      g.local_complement_in_place(b0);
      g.delete_vertex(a);
      break;
    }
  }
  return out;
}

/// Projects vertex a of the graph state onto a Pauli eigenstate.
inline MeasurementOutcome measure(const ColoredGraph& g, std::size_t a, PauliBasis basis, int sign,
                                  const B0Rule& rule = lowest_neighbor) {
  MeasurementOutcome out;
  ColoredGraph work = g;
  out = measure_in_place(work, a, basis, sign, rule);
  if (!out.collapsed) out.reduced = std::move(work);
  return out;
}

/// Vertex (a, i) of the big graph has index i * |V| + a.
inline std::size_t big_graph_index(std::size_t vertex, std::size_t replica, std::size_t n_vertices) {
  return replica * n_vertices + vertex;
}

/// Graph on n_rep copies of g whose graph state, overlapped with |+...+>,
/// equals the multi-invariant defined by `perms`.
inline ColoredGraph build_big_graph(const ColoredGraph& g, const PermutationTuple& perms) {
  const std::size_t nv = g.size();
  const std::size_t reps = perms.replicas();
  for (std::size_t v = 0; v < nv; ++v) {
    if (!g.present(v)) throw std::invalid_argument("build_big_graph: graph has deleted vertices");
    if (!perms.has_party(g.party(v))) {
      throw std::invalid_argument("build_big_graph: no permutation for party '" + g.party(v) + "'");
    }
  }
  std::vector<std::string> labels(nv * reps);
  for (std::size_t i = 0; i < reps; ++i) {
    for (std::size_t v = 0; v < nv; ++v) labels[big_graph_index(v, i, nv)] = g.party(v);
  }
  ColoredGraph big(nv * reps, std::move(labels));
  for (auto [a, b] : g.edges()) {
    const Permutation& sa = perms.sigma(g.party(a));
    const Permutation sb_inv = perms.sigma(g.party(b)).inverse();
    for (std::size_t i = 0; i < reps; ++i) {
      big.toggle_edge(big_graph_index(a, i, nv), big_graph_index(b, i, nv));
      std::size_t j = sb_inv(sa(i));
      big.toggle_edge(big_graph_index(a, i, nv), big_graph_index(b, j, nv));
    }
  }
  return big;
}

}  // namespace multinv
