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

#include <gtest/gtest.h>

#include <random>

#include "multinv/convert.hpp"
#include "multinv/graph.hpp"
#include "multinv/random.hpp"

namespace multinv {
namespace {

using C = std::complex<double>;
using M2 = std::array<C, 4>;  // row-major

M2 tag_matrix(LocalUnitary u) {
  const double r = 1 / std::sqrt(2.0);
  const C w = std::polar(1.0, M_PI / 4);
  switch (u) {
    case LocalUnitary::Sz: return {1, 0, 0, -1};
    case LocalUnitary::SqrtMinusIZ: return {std::conj(w), 0, 0, w};
    case LocalUnitary::SqrtPlusIZ: return {w, 0, 0, std::conj(w)};
    case LocalUnitary::SqrtMinusIY: return {r, -r, r, r};
    case LocalUnitary::SqrtPlusIY: return {r, r, -r, r};
  }
  return {};
}

std::array<C, 2> eigvec(PauliBasis b, int s) {
  const double r = 1 / std::sqrt(2.0);
  switch (b) {
    case PauliBasis::X: return {r, s * r};
    case PauliBasis::Y: return {r, C(0, s * r)};
    case PauliBasis::Z: return s > 0 ? std::array<C, 2>{1, 0} : std::array<C, 2>{0, 1};
  }
  return {};
}

void apply_1q(StateVector& v, std::size_t q, const M2& m) {
  const std::size_t bit = std::size_t{1} << q;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i & bit) continue;
    C a = v[i], b = v[i | bit];
    v[i] = m[0] * a + m[1] * b;
    v[i | bit] = m[2] * a + m[3] * b;
  }
}

// <e|_q v, leaving the other qubits in order.
StateVector contract(const StateVector& v, std::size_t q, const std::array<C, 2>& e) {
  StateVector out(v.size() / 2);
  const std::size_t low = (std::size_t{1} << q) - 1;
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::size_t j = (i & low) | ((i >> (q + 1)) << q);
    out[j] += std::conj(e[(i >> q) & 1u]) * v[i];
  }
  return out;
}

double dist(const StateVector& a, const StateVector& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
  return std::sqrt(s);
}

TEST(Graph, LocalComplementExamples) {
  ColoredGraph g(4);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(1, 3);
  g.add_edge(2, 3);
  ColoredGraph lc = local_complement(g, 1);
  EXPECT_FALSE(lc.has_edge(2, 3));
  EXPECT_TRUE(lc.has_edge(0, 2));
  EXPECT_TRUE(lc.has_edge(0, 3));
  EXPECT_TRUE(lc.has_edge(0, 1) && lc.has_edge(1, 2) && lc.has_edge(1, 3));

  ColoredGraph iso(3);
  iso.add_edge(1, 2);
  EXPECT_EQ(local_complement(iso, 0), iso);

  ColoredGraph tri(3);
  tri.add_edge(0, 1);
  tri.add_edge(1, 2);
  tri.add_edge(0, 2);
  for (std::size_t a = 0; a < 3; ++a) EXPECT_EQ(local_complement(tri, a).edges().size(), 2u);
}

TEST(Graph, LocalComplementInvolution) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 1 + rng() % 70;
    ColoredGraph g = random_graph(std::vector<std::string>(n, "A"), 0.4, rng);
    std::size_t a = rng() % n;
    ColoredGraph lc = local_complement(g, a);
    EXPECT_EQ(local_complement(lc, a), g);
    for (std::size_t v = 0; v < n; ++v) EXPECT_FALSE(lc.has_edge(v, v));
  }
}

TEST(Graph, MeasurementExamples) {
  ColoredGraph g(3);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  auto z = measure(g, 1, PauliBasis::Z, +1);
  EXPECT_FALSE(z.collapsed);
  EXPECT_TRUE(z.byproducts.empty());
  EXPECT_FALSE(z.reduced.present(1));
  EXPECT_TRUE(z.reduced.edges().empty());

  ColoredGraph iso(2);
  EXPECT_TRUE(measure(iso, 0, PauliBasis::X, -1).collapsed);
  EXPECT_FALSE(measure(iso, 0, PauliBasis::X, +1).collapsed);

  ColoredGraph star(4);
  for (std::size_t leaf = 1; leaf < 4; ++leaf) star.add_edge(0, leaf);
  auto y = measure(star, 0, PauliBasis::Y, +1);
  EXPECT_EQ(y.reduced.edges().size(), 3u);
  ASSERT_EQ(y.byproducts.size(), 3u);
  for (const auto& t : y.byproducts) EXPECT_EQ(t.kind, LocalUnitary::SqrtMinusIZ);
}

// <j,s|_a |G> == phase * 2^{-1/2} * U |G'>, checked on dense vectors.
void check_measurement(const ColoredGraph& g, std::size_t a, PauliBasis basis, int sign, const B0Rule& rule) {
  StateVector lhs = contract(graph_dense(g), a, eigvec(basis, sign));
  auto out = measure(g, a, basis, sign, rule);
  if (out.collapsed) {
    for (auto v : lhs) EXPECT_LT(std::abs(v), 1e-12);
    return;
  }
  StateVector rhs = graph_dense(out.reduced);
  for (const auto& t : out.byproducts) {
    ASSERT_TRUE(out.reduced.present(t.vertex));
    apply_1q(rhs, t.vertex - (t.vertex > a ? 1 : 0), tag_matrix(t.kind));
  }
  C factor = std::polar(out.isolated ? 1.0 : 1 / std::sqrt(2.0), out.phase_eighths * M_PI / 4);
  for (auto& v : rhs) v *= factor;
  EXPECT_LT(dist(lhs, rhs), 1e-9) << "basis " << basis_char(basis) << " sign " << sign;
}

TEST(Graph, MeasurementMatchesDense) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n = 1 + rng() % 6;
    ColoredGraph g = random_graph(std::vector<std::string>(n, "A"), 0.3 + 0.1 * (trial % 5), rng);
    std::size_t a = rng() % n;
    B0Rule random_rule = [&rng](const ColoredGraph& gg, std::size_t v) {
      auto nb = gg.neighbors(v).ones();
      return nb[rng() % nb.size()];
    };
    for (PauliBasis b : {PauliBasis::X, PauliBasis::Y, PauliBasis::Z}) {
      for (int s : {1, -1}) {
        check_measurement(g, a, b, s, lowest_neighbor);
        if (b == PauliBasis::X && g.degree(a) > 0) check_measurement(g, a, b, s, random_rule);
      }
    }
  }
}

TEST(Graph, MeasurementOnPartiallyDeletedGraph) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 3 + rng() % 4;
    ColoredGraph g = random_graph(std::vector<std::string>(n, "A"), 0.6, rng);
    std::size_t gone = rng() % n;
    g.delete_vertex(gone);
    std::size_t a;
    do {
      a = rng() % n;
    } while (a == gone);
    // Rebuild in compact form and compare adjacency after the same measurement.
    auto out = measure(g, a, PauliBasis::X, 1);
    ColoredGraph c = g.compacted();
    std::size_t ac = a - (a > gone ? 1 : 0);
    auto outc = measure(c, ac, PauliBasis::X, 1);
    if (out.collapsed || outc.collapsed) {
      EXPECT_EQ(out.collapsed, outc.collapsed);
      continue;
    }
    EXPECT_EQ(out.reduced.compacted(), outc.reduced.compacted());
  }
}

TEST(Graph, ZMeasurementsCommute) {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t n = 2 + rng() % 8;
    ColoredGraph g = random_graph(std::vector<std::string>(n, "A"), 0.5, rng);
    std::size_t a = rng() % n, b = (a + 1 + rng() % (n - 1)) % n;
    auto ab = measure(measure(g, a, PauliBasis::Z, 1).reduced, b, PauliBasis::Z, 1).reduced;
    auto ba = measure(measure(g, b, PauliBasis::Z, 1).reduced, a, PauliBasis::Z, 1).reduced;
    EXPECT_EQ(ab, ba);
  }
}

TEST(Graph, BigGraphExamples) {
  ColoredGraph ghz(3, std::vector<std::string>{"A", "B", "C"});
  ghz.add_edge(0, 1);
  ghz.add_edge(0, 2);
  auto ident = PermutationTuple({"A", "B", "C"}, {Permutation(3), Permutation(3), Permutation(3)});
  EXPECT_TRUE(build_big_graph(ghz, ident).edges().empty());

  auto one = PermutationTuple({"A", "B", "C"}, {Permutation(1), Permutation(1), Permutation(1)});
  EXPECT_TRUE(build_big_graph(ghz, one).edges().empty());

  // sigma = ((1)(2)(3), (123), (12)(3)) on the GHZ star centred at A.
  auto tup = PermutationTuple({"A", "B", "C"}, {Permutation(3), Permutation({1, 2, 0}), Permutation({1, 0, 2})});
  auto big = build_big_graph(ghz, tup);
  EXPECT_EQ(big.size(), 9u);
  // Edge (A,i)-(B,j) present iff exactly one of i == j, i == sigma_B(j).
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      bool ab = (i == j) != (i == tup.sigma("B")(j));
      bool ac = (i == j) != (i == tup.sigma("C")(j));
      EXPECT_EQ(big.has_edge(big_graph_index(0, i, 3), big_graph_index(1, j, 3)), ab);
      EXPECT_EQ(big.has_edge(big_graph_index(0, i, 3), big_graph_index(2, j, 3)), ac);
    }
  }
  EXPECT_EQ(big.edges().size(), 10u);

  ColoredGraph bad(2, std::vector<std::string>{"A", "Q"});
  EXPECT_THROW(build_big_graph(bad, tup), std::invalid_argument);
}

TEST(Graph, BigGraphSymmetric) {
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t n = 1 + rng() % 6;
    ColoredGraph g = random_graph(random_parties(n, {"A", "B", "C"}, rng), 0.5, rng);
    auto t = random_tuple(3, 1 + rng() % 5, rng);
    auto big = build_big_graph(g, t);
    for (std::size_t a = 0; a < big.size(); ++a) {
      EXPECT_FALSE(big.has_edge(a, a));
      for (std::size_t b = 0; b < big.size(); ++b) EXPECT_EQ(big.has_edge(a, b), big.has_edge(b, a));
    }
  }
}

}  // namespace
}  // namespace multinv
