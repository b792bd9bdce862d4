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

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "multinv/clifford.hpp"
#include "multinv/graph.hpp"
#include "multinv/tableau.hpp"

namespace multinv {

/// Erdos-Renyi graph G(n, p) with the given vertex labels.
inline ColoredGraph random_graph(std::vector<std::string> parties, double p, std::mt19937_64& rng) {
  const std::size_t n = parties.size();
  ColoredGraph g(n, std::move(parties));
  std::bernoulli_distribution edge(p);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (edge(rng)) g.add_edge(a, b);
    }
  }
  return g;
}

inline bool is_connected(const ColoredGraph& g) {
  const std::size_t n = g.size();
  if (n == 0) return true;
  BitVector seen(n);
  std::vector<std::size_t> stack{0};
  seen.set(0);
  while (!stack.empty()) {
    std::size_t v = stack.back();
    stack.pop_back();
    BitVector fresh = ~seen;
    fresh &= g.neighbors(v);
    for (std::size_t w = fresh.find_first(); w < n; w = fresh.find_next(w + 1)) {
      seen.set(w);
      stack.push_back(w);
    }
  }
  return seen.popcount() == n;
}

/// G(n, p) conditioned on being connected, by rejection.
inline ColoredGraph random_connected_graph(std::vector<std::string> parties, double p, std::mt19937_64& rng,
                                           int max_attempts = 100000) {
  for (int i = 0; i < max_attempts; ++i) {
    ColoredGraph g = random_graph(parties, p, rng);
    if (is_connected(g)) return g;
  }
  throw std::runtime_error("random_connected_graph: rejection sampling did not converge");
}

/// Uniformly random party assignment over `labels`.
inline std::vector<std::string> random_parties(std::size_t n, const std::vector<std::string>& labels,
                                               std::mt19937_64& rng) {
  std::vector<std::string> out(n);
  for (auto& s : out) s = labels[rng() % labels.size()];
  return out;
}

inline Circuit random_clifford_circuit(std::size_t n, std::size_t gates, std::mt19937_64& rng) {
  static constexpr GateKind kinds[] = {GateKind::H, GateKind::S,  GateKind::Sdg,  GateKind::X,
                                       GateKind::Y, GateKind::Z,  GateKind::CNOT, GateKind::CZ};
  Circuit c;
  for (std::size_t i = 0; i < gates; ++i) {
    Gate g{kinds[rng() % (n > 1 ? 8 : 6)], rng() % n, 0};
    if (g.two_qubit()) {
      do {
        g.q1 = rng() % n;
      } while (g.q1 == g.q0);
    }
    c.push_back(g);
  }
  return c;
}

/// Random pure stabilizer state: a random Clifford circuit applied to |0...0>.
inline StabilizerTableau random_tableau(std::vector<std::string> parties, std::mt19937_64& rng) {
  const std::size_t n = parties.size();
  return apply_circuit(zero_state(std::move(parties)), random_clifford_circuit(n, 6 * n * n + 4, rng));
}

}  // namespace multinv
