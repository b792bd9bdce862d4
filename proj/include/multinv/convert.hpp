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

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "multinv/clifford.hpp"
#include "multinv/graph.hpp"
#include "multinv/tableau.hpp"

namespace multinv {

/// Stabilizer generators X_a prod_{b in N(a)} Z_b of a graph state, one per
/// present vertex in index order.
inline StabilizerTableau graph_tableau(const ColoredGraph& g) {
  ColoredGraph c = g.compacted();
  const std::size_t n = c.size();
  std::vector<PauliString> gens;
  for (std::size_t a = 0; a < n; ++a) {
    PauliString p(n);
    p.x().set(a);
    p.z() = c.neighbors(a);
    gens.push_back(std::move(p));
  }
  return StabilizerTableau(std::move(gens), c.parties());
}

/// Dense graph state prod CZ |+>^n (qubit j is bit j of the index).
inline StateVector graph_dense(const ColoredGraph& g) {
  ColoredGraph c = g.compacted();
  const std::size_t n = c.size();
  if (n > 24) throw std::invalid_argument("graph_dense supports at most 24 vertices");
  const std::size_t dim = std::size_t{1} << n;
  std::vector<std::uint64_t> nb(n, 0);
  for (auto [a, b] : c.edges()) nb[a] |= std::uint64_t{1} << b;
  const double amp = std::pow(2.0, -0.5 * static_cast<double>(n));
  StateVector psi(dim);
  for (std::size_t x = 0; x < dim; ++x) {
    int parity = 0;
    for (std::size_t a = 0; a < n; ++a) {
      if ((x >> a) & 1u) parity ^= std::popcount(nb[a] & x) & 1;
    }
    psi[x] = parity ? -amp : amp;
  }
  return psi;
}

/// A graph together with local Cliffords C such that |graph> = C |psi>.
struct GraphStateForm {
  ColoredGraph graph;
  Circuit local_cliffords;
};

/// Finds a graph state local-Clifford equivalent to a pure stabilizer state.
inline GraphStateForm to_graph_state(const StabilizerTableau& t) {
  const std::size_t n = t.qubits();
  if (!t.is_pure()) throw InvalidStabilizer("to_graph_state needs a pure state (k = n)");
  CanonicalForm cf = canonical_form(t);
  Circuit circ;

  // Hadamards on qubits that are not X pivots of the canonical form.
  std::vector<bool> pivot(n, false);
  for (std::size_t r = 0; r < cf.x_rows; ++r) pivot[cf.rows[r].x().find_first()] = true;
  for (std::size_t q = 0; q < n; ++q) {
    if (!pivot[q]) circ.push_back({GateKind::H, q, 0});
  }
  std::vector<PauliString> rows = cf.rows;
  for (auto& r : rows) conjugate(r, circ);

  auto x_rank = [&](const std::vector<PauliString>& rs) {
    BitMatrix m(n);
    for (const auto& r : rs) m.push_row(r.x());
    return rank(m);
  };
  // Greedy fallback: toggle Hadamards on the lowest-index deficient qubits.
  for (std::size_t q = 0; q < n && x_rank(rows) < n; ++q) {
    std::vector<PauliString> trial = rows;
    Gate h{GateKind::H, q, 0};
    for (auto& r : trial) conjugate(r, h);
    if (x_rank(trial) > x_rank(rows)) {
      rows = std::move(trial);
      circ.push_back(h);
    }
  }
  if (x_rank(rows) < n) throw std::logic_error("to_graph_state: could not make the X part invertible");

  // Row-reduce so the X part is the identity.
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t found = n;
    for (std::size_t r = c; r < n; ++r) {
      if (rows[r].x().get(c)) {
        found = r;
        break;
      }
    }
    std::swap(rows[c], rows[found]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r != c && rows[r].x().get(c)) rows[r] *= rows[c];
    }
  }
  // Clear Y on the diagonal, then fix signs.
  for (std::size_t a = 0; a < n; ++a) {
    if (rows[a].z().get(a)) {
      Gate g{GateKind::Sdg, a, 0};
      circ.push_back(g);
      for (auto& r : rows) conjugate(r, g);
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    if (rows[a].negative()) {
      Gate g{GateKind::Z, a, 0};
      circ.push_back(g);
      for (auto& r : rows) conjugate(r, g);
    }
  }
  GraphStateForm out{ColoredGraph(n, t.qubit_parties()), std::move(circ)};
  for (std::size_t a = 0; a < n; ++a) {
    if (rows[a].phase() != 0) throw std::logic_error("to_graph_state: residual phase");
    for (std::size_t b = a + 1; b < n; ++b) {
      if (rows[a].z().get(b) != rows[b].z().get(a)) throw std::logic_error("to_graph_state: asymmetric Z block");
      if (rows[a].z().get(b)) out.graph.add_edge(a, b);
    }
  }
  return out;
}

class NotStabilizerState : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Recovers the stabilizer group of a dense vector by testing every signed
/// Pauli string (n <= 8). Throws NotStabilizerState when fewer than n
/// independent stabilizers exist.
inline StabilizerTableau stabilizer_from_dense(const StateVector& psi, std::vector<std::string> qubit_parties,
                                               double tol = 1e-9) {
  const std::size_t n = qubit_parties.size();
  if (n > 8) throw std::invalid_argument("stabilizer_from_dense supports at most 8 qubits");
  if (psi.size() != (std::size_t{1} << n)) throw std::invalid_argument("stabilizer_from_dense: dimension mismatch");
  std::vector<PauliString> found;
  BitMatrix span(2 * n);
  const std::size_t total = std::size_t{1} << (2 * n);
  for (std::size_t code = 1; code < total && found.size() < n; ++code) {
    PauliString p(n);
    for (std::size_t j = 0; j < n; ++j) {
      if ((code >> j) & 1u) p.x().set(j);
      if ((code >> (n + j)) & 1u) p.z().set(j);
    }
    StateVector v = apply_pauli(p, psi);
    double dev_plus = 0, dev_minus = 0;
    for (std::size_t i = 0; i < psi.size(); ++i) {
      dev_plus += std::norm(v[i] - psi[i]);
      dev_minus += std::norm(v[i] + psi[i]);
    }
    if (dev_plus > tol && dev_minus > tol) continue;
    if (dev_minus <= tol) p.set_phase(2);
    BitVector row = StabilizerTableau::symplectic_row(p);
    if (in_span(row, span)) continue;
    span.push_row(row);
    found.push_back(p);
  }
  if (found.size() < n) {
    throw NotStabilizerState("state has only " + std::to_string(found.size()) + " independent Pauli stabilizers on " +
                             std::to_string(n) + " qubits");
  }
  return StabilizerTableau(std::move(found), std::move(qubit_parties));
}

}  // namespace multinv
