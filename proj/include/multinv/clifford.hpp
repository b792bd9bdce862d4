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

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "multinv/pauli.hpp"

namespace multinv {

enum class GateKind { H, S, Sdg, X, Y, Z, CNOT, CZ };

/// A Clifford gate on one or two qubits; for CNOT q0 is the control.
struct Gate {
  GateKind kind;
  std::size_t q0;
  std::size_t q1 = 0;

  bool two_qubit() const { return kind == GateKind::CNOT || kind == GateKind::CZ; }
};

inline std::string gate_name(GateKind k) {
  switch (k) {
    case GateKind::H: return "H";
    case GateKind::S: return "S";
    case GateKind::Sdg: return "S_DAG";
    case GateKind::X: return "X";
    case GateKind::Y: return "Y";
    case GateKind::Z: return "Z";
    case GateKind::CNOT: return "CNOT";
    case GateKind::CZ: return "CZ";
  }
  return "?";
}

namespace detail {

// Conjugation table entry: input bits (x,z per qubit) -> output bits and the
// phase (power of i) picked up.
struct ConjEntry {
  unsigned bits = 0;
  unsigned phase = 0;
};

// Bit layout for k qubits: bit 2j is x_j, bit 2j+1 is z_j.
template <std::size_t K>
std::array<ConjEntry, (1u << (2 * K))> build_table(const std::array<PauliString, K>& x_images,
                                                   const std::array<PauliString, K>& z_images) {
  std::array<ConjEntry, (1u << (2 * K))> table{};
  for (unsigned in = 0; in < table.size(); ++in) {
    PauliString acc(K);
    unsigned xz = 0;
    for (std::size_t j = 0; j < K; ++j) {
      if (((in >> (2 * j)) & 1u) && ((in >> (2 * j + 1)) & 1u)) ++xz;
    }
    acc.set_phase(xz);
    for (std::size_t j = 0; j < K; ++j) {
      if ((in >> (2 * j)) & 1u) acc *= x_images[j];
    }
    for (std::size_t j = 0; j < K; ++j) {
      if ((in >> (2 * j + 1)) & 1u) acc *= z_images[j];
    }
    unsigned out = 0;
    for (std::size_t j = 0; j < K; ++j) {
      if (acc.x().get(j)) out |= 1u << (2 * j);
      if (acc.z().get(j)) out |= 1u << (2 * j + 1);
    }
    table[in] = ConjEntry{out, acc.phase()};
  }
  return table;
}

using Table1 = std::array<ConjEntry, 4>;
using Table2 = std::array<ConjEntry, 16>;

inline const Table1& single_table(GateKind k) {
  auto P = [](const char* s) { return PauliString::parse(s); };
  static const Table1 h = build_table<1>({P("Z")}, {P("X")});
  static const Table1 s = build_table<1>({P("Y")}, {P("Z")});
  static const Table1 sdg = build_table<1>({P("-Y")}, {P("Z")});
  static const Table1 x = build_table<1>({P("X")}, {P("-Z")});
  static const Table1 y = build_table<1>({P("-X")}, {P("-Z")});
  static const Table1 z = build_table<1>({P("-X")}, {P("Z")});
  switch (k) {
    case GateKind::H: return h;
    case GateKind::S: return s;
    case GateKind::Sdg: return sdg;
    case GateKind::X: return x;
    case GateKind::Y: return y;
    case GateKind::Z: return z;
    default: throw std::logic_error("single_table: not a single-qubit gate");
  }
}

inline const Table2& pair_table(GateKind k) {
  auto P = [](const char* s) { return PauliString::parse(s); };
  static const Table2 cnot = build_table<2>({P("XX"), P("IX")}, {P("ZI"), P("ZZ")});
  static const Table2 cz = build_table<2>({P("XZ"), P("ZX")}, {P("ZI"), P("IZ")});
  switch (k) {
    case GateKind::CNOT: return cnot;
    case GateKind::CZ: return cz;
    default: throw std::logic_error("pair_table: not a two-qubit gate");
  }
}

}  // namespace detail

/// p <- U p U^dagger.
inline void conjugate(PauliString& p, const Gate& g) {
  if (!g.two_qubit()) {
    const auto& t = detail::single_table(g.kind);
    unsigned in = (p.x().get(g.q0) ? 1u : 0u) | (p.z().get(g.q0) ? 2u : 0u);
    if (in == 0) return;
    const auto& e = t[in];
    p.x().set(g.q0, e.bits & 1u);
    p.z().set(g.q0, e.bits & 2u);
    p.add_phase(e.phase);
    return;
  }
  if (g.q0 == g.q1) throw std::invalid_argument("two-qubit gate on a single qubit");
  const auto& t = detail::pair_table(g.kind);
  unsigned in = (p.x().get(g.q0) ? 1u : 0u) | (p.z().get(g.q0) ? 2u : 0u) |
                (p.x().get(g.q1) ? 4u : 0u) | (p.z().get(g.q1) ? 8u : 0u);
  if (in == 0) return;
  const auto& e = t[in];
  p.x().set(g.q0, e.bits & 1u);
  p.z().set(g.q0, e.bits & 2u);
  p.x().set(g.q1, e.bits & 4u);
  p.z().set(g.q1, e.bits & 8u);
  p.add_phase(e.phase);
}

/// Gates in application order: the circuit is U = gates.back() ... gates.front().
using Circuit = std::vector<Gate>;

inline void conjugate(PauliString& p, const Circuit& c) {
  for (const auto& g : c) conjugate(p, g);
}

/// Applies a gate to a dense state vector. Qubit j is bit j of the index.
inline void apply_gate(std::vector<std::complex<double>>& psi, const Gate& g) {
  using C = std::complex<double>;
  const std::size_t dim = psi.size();
  const std::size_t m0 = std::size_t{1} << g.q0;
  const double r = 1.0 / std::sqrt(2.0);
  switch (g.kind) {
    case GateKind::H:
      for (std::size_t i = 0; i < dim; ++i) {
        if (i & m0) continue;
        C a = psi[i], b = psi[i | m0];
        psi[i] = r * (a + b);
        psi[i | m0] = r * (a - b);
      }
      return;
    case GateKind::S:
    case GateKind::Sdg: {
      C ph = g.kind == GateKind::S ? C(0, 1) : C(0, -1);
      for (std::size_t i = 0; i < dim; ++i) {
        if (i & m0) psi[i] *= ph;
      }
      return;
    }
    case GateKind::X:
    case GateKind::Y:
      for (std::size_t i = 0; i < dim; ++i) {
        if (i & m0) continue;
        C a = psi[i], b = psi[i | m0];
        if (g.kind == GateKind::X) {
          psi[i] = b;
          psi[i | m0] = a;
        } else {
          psi[i] = C(0, -1) * b;
          psi[i | m0] = C(0, 1) * a;
        }
      }
      return;
    case GateKind::Z:
      for (std::size_t i = 0; i < dim; ++i) {
        if (i & m0) psi[i] = -psi[i];
      }
      return;
    case GateKind::CNOT: {
      const std::size_t m1 = std::size_t{1} << g.q1;
      for (std::size_t i = 0; i < dim; ++i) {
        if ((i & m0) && !(i & m1)) std::swap(psi[i], psi[i | m1]);
      }
      return;
    }
    case GateKind::CZ: {
      const std::size_t m1 = std::size_t{1} << g.q1;
      for (std::size_t i = 0; i < dim; ++i) {
        if ((i & m0) && (i & m1)) psi[i] = -psi[i];
      }
      return;
    }
  }
}

inline void apply_circuit(std::vector<std::complex<double>>& psi, const Circuit& c) {
  for (const auto& g : c) apply_gate(psi, g);
}

/// Gate-by-gate inverse of a circuit.
inline Circuit inverse(const Circuit& c) {
  Circuit out;
  out.reserve(c.size());
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    Gate g = *it;
    if (g.kind == GateKind::S) {
      g.kind = GateKind::Sdg;
    } else if (g.kind == GateKind::Sdg) {
      g.kind = GateKind::S;
    }
    out.push_back(g);
  }
  return out;
}

}  // namespace multinv
