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

#include <algorithm>
#include <random>
#include <set>

#include "multinv/coxeter.hpp"
#include "multinv/engines.hpp"
#include "multinv/permutation.hpp"
#include "multinv/random.hpp"

namespace multinv {
namespace {

// Oracle: closure of a set of permutations under composition.
std::size_t permutation_group_order(const std::vector<std::vector<int>>& gens) {
  std::set<std::vector<int>> seen;
  std::vector<int> id(gens.front().size());
  std::iota(id.begin(), id.end(), 0);
  std::vector<std::vector<int>> queue = {id};
  seen.insert(id);
  for (std::size_t h = 0; h < queue.size(); ++h) {
    for (const auto& g : gens) {
      std::vector<int> nxt(id.size());
      for (std::size_t i = 0; i < id.size(); ++i) nxt[i] = g[queue[h][i]];
      if (seen.insert(nxt).second) queue.push_back(nxt);
    }
  }
  return seen.size();
}

TEST(Permutation, Basics) {
  Permutation p = parse_cycles("(0 1 2)(3)", 4);
  EXPECT_EQ(p(0), 1u);
  EXPECT_EQ(p(2), 0u);
  EXPECT_EQ(p.to_string(), "(0 1 2)(3)");
  EXPECT_EQ(p * p.inverse(), Permutation::identity(4));
  EXPECT_EQ(p.cycle_count(), 2u);
  EXPECT_THROW(parse_cycles("(0 1)(1 2)", 3), std::invalid_argument);
  EXPECT_THROW(parse_cycles("(0 5)", 3), std::invalid_argument);
  EXPECT_EQ(parse_cycles("", 3), Permutation::identity(3));
}

TEST(Permutation, MultiEntropyTuples) {
  auto t32 = multi_entropy_tuple(3, 2);
  EXPECT_EQ(t32.replicas(), 3u);
  EXPECT_EQ(t32.sigma(0).cycle_count(), 1u);
  EXPECT_TRUE(t32.sigma(1).is_identity());

  auto t23 = multi_entropy_tuple(2, 3);
  EXPECT_EQ(t23.replicas(), 4u);
  for (std::size_t a = 0; a < 2; ++a) {
    EXPECT_EQ(t23.sigma(a).cycle_count(), 2u);
    EXPECT_EQ(t23.sigma(a) * t23.sigma(a), Permutation::identity(4));
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NE(t23.sigma(a)(i), i);
  }
  EXPECT_EQ(t23.sigma(0) * t23.sigma(1), t23.sigma(1) * t23.sigma(0));
  EXPECT_TRUE(t23.sigma(2).is_identity());

  auto t1 = multi_entropy_tuple(1, 4);
  for (const auto& s : t1.sigmas()) EXPECT_TRUE(s.is_identity());
}

TEST(Permutation, GaugeFix) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 20; ++trial) {
    auto t = random_tuple(3, 5, rng);
    auto moved = t.relabeled(random_permutation(5, rng), random_permutation(5, rng));
    EXPECT_TRUE(moved.gauge_fixed().sigmas().back().is_identity());
  }
}

TEST(Coxeter, GroupOrders) {
  EXPECT_EQ(generate_coxeter(CoxeterSpec::tripartite(2, 3, 3)).order, 24u);
  EXPECT_EQ(generate_coxeter(CoxeterSpec::tripartite(2, 3, 4)).order, 48u);
  EXPECT_EQ(generate_coxeter(CoxeterSpec::tripartite(2, 3, 5)).order, 120u);
  for (int m = 2; m <= 9; ++m) EXPECT_EQ(generate_coxeter(CoxeterSpec::from_upper({m})).order, 2u * m);
  EXPECT_EQ(generate_coxeter(CoxeterSpec::all_commuting(4)).order, 16u);
  // Independent oracles: S4 from adjacent transpositions, signed permutations of 3 letters.
  EXPECT_EQ(permutation_group_order({{1, 0, 2, 3}, {0, 2, 1, 3}, {0, 1, 3, 2}}), 24u);
  // B3 acting on {+-1, +-2, +-3} encoded 0..5 (i, i+3 are +-): swap 1<->2, swap 2<->3, negate 3.
  EXPECT_EQ(permutation_group_order({{1, 0, 2, 4, 3, 5}, {0, 2, 1, 3, 5, 4}, {0, 1, 5, 3, 4, 2}}), 48u);
  EXPECT_FALSE(CoxeterSpec::tripartite(3, 3, 3).is_finite());
  EXPECT_THROW(generate_coxeter(CoxeterSpec::tripartite(3, 3, 3)), GroupTooLarge);
  EXPECT_THROW(generate_coxeter(CoxeterSpec::tripartite(3, 3, 3), 500, false), GroupTooLarge);
}

TEST(Coxeter, CayleyGraphIsRegularBipartite) {
  for (auto spec : {CoxeterSpec::tripartite(2, 3, 3), CoxeterSpec::tripartite(2, 3, 5), CoxeterSpec::all_commuting(3),
                    CoxeterSpec::from_upper({2, 2, 2, 3, 2, 3})}) {
    auto cg = generate_coxeter(spec);
    std::vector<std::size_t> touches(cg.order, 0);
    for (const auto& gen : cg.left) {
      for (std::size_t g = 0; g < cg.order; ++g) {
        EXPECT_EQ(gen[gen[g]], g);
        EXPECT_NE(cg.parity[g], cg.parity[gen[g]]);
        ++touches[g];
      }
    }
    for (auto c : touches) EXPECT_EQ(c, spec.size());
  }
}

TEST(Coxeter, SubgraphCounts) {
  // (m_AB, m_BC, m_CA) = (2, 3, 3).
  auto spec = CoxeterSpec::tripartite(2, 3, 3);
  auto sc = subgraph_counts(generate_coxeter(spec), spec);
  EXPECT_EQ(sc.n[0b011], 6u);
  EXPECT_EQ(sc.n[0b110], 4u);
  EXPECT_EQ(sc.n[0b101], 4u);
  EXPECT_EQ(sc.n[0b001], 12u);
  EXPECT_EQ(sc.n[0b010], 12u);
  EXPECT_EQ(sc.n[0b100], 12u);
  EXPECT_EQ(sc.replicas, 12u);

  auto renyi = CoxeterSpec::all_commuting(3);
  auto sr = subgraph_counts(generate_coxeter(renyi), renyi);
  EXPECT_EQ(sr.n[0b011], 2u);
  EXPECT_EQ(sr.n[0b001], 4u);

  for (int m = 2; m <= 6; ++m) {
    auto d = CoxeterSpec::from_upper({m});
    EXPECT_EQ(subgraph_counts(generate_coxeter(d), d).n[0b01], static_cast<std::size_t>(m));
  }
}

TEST(Coxeter, CountsTimesParabolicOrder) {
  for (auto spec : {CoxeterSpec::tripartite(2, 3, 3), CoxeterSpec::tripartite(2, 3, 4), CoxeterSpec::tripartite(2, 3, 5),
                    CoxeterSpec::tripartite(2, 2, 5), CoxeterSpec::from_upper({3, 2, 2, 3, 2, 3})}) {
    auto cg = generate_coxeter(spec);
    auto sc = subgraph_counts(cg, spec);
    for (std::uint32_t s = 1; s < sc.n.size(); ++s) EXPECT_EQ(sc.n[s] * parabolic_order(spec, s), cg.order);
  }
}

TEST(Coxeter, TupleMatchesCounts) {
  for (auto spec : {CoxeterSpec::tripartite(2, 3, 3), CoxeterSpec::tripartite(2, 3, 4), CoxeterSpec::tripartite(2, 2, 4)}) {
    auto cg = generate_coxeter(spec);
    auto sc = subgraph_counts(cg, spec);
    auto t = cayley_to_tuple(cg, spec.parties());
    EXPECT_EQ(t.replicas(), cg.order / 2);
    EXPECT_TRUE(t.sigmas().back().is_identity());
    for (std::size_t a = 0; a < 3; ++a) {
      for (std::size_t b = a + 1; b < 3; ++b) {
        std::uint32_t mask = (1u << a) | (1u << b);
        EXPECT_EQ((t.sigma(a) * t.sigma(b).inverse()).cycle_count(), sc.n[mask]);
      }
    }
  }
  auto klein = coxeter_tuple(CoxeterSpec::from_upper({2}));
  EXPECT_EQ(klein.replicas(), 2u);
  EXPECT_EQ(klein.sigma(0).cycle_count(), 1u);
}

// Dihedral I2(m) computes Tr rho_A^m.
TEST(Coxeter, DihedralIsRenyi) {
  std::mt19937_64 rng(62);
  std::normal_distribution<double> gauss;
  for (int m = 2; m <= 5; ++m) {
    auto t = coxeter_tuple(CoxeterSpec::from_upper({m}));
    // Random 1+2 qubit state, A = qubit 0.
    StateVector psi(8);
    double nn = 0;
    for (auto& a : psi) {
      a = {gauss(rng), gauss(rng)};
      nn += std::norm(a);
    }
    for (auto& a : psi) a /= std::sqrt(nn);
    std::complex<double> rho[2][2] = {};
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        for (int b = 0; b < 4; ++b) rho[i][j] += psi[i | (b << 1)] * std::conj(psi[j | (b << 1)]);
      }
    }
    std::complex<double> pw[2][2] = {{1, 0}, {0, 1}};
    for (int k = 0; k < m; ++k) {
      std::complex<double> nx[2][2] = {};
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          for (int l = 0; l < 2; ++l) nx[i][j] += pw[i][l] * rho[l][j];
      std::copy(&nx[0][0], &nx[0][0] + 4, &pw[0][0]);
    }
    auto z = dense_multi_invariant(psi, {0, 1, 1}, t);
    EXPECT_NEAR(std::abs(z - (pw[0][0] + pw[1][1])), 0, 1e-10) << "m = " << m;
  }
}

TEST(Topology, Examples) {
  auto cube = tripartite_topology(multi_entropy_tuple(2, 3));
  EXPECT_EQ(cube.vertices, 8u);
  EXPECT_EQ(cube.faces, 6u);
  EXPECT_EQ(cube.euler, 2);
  EXPECT_EQ(cube.genus, 0);

  auto kempe = tripartite_topology(kempe_tuple());
  EXPECT_EQ(kempe.vertices, 6u);
  EXPECT_EQ(kempe.faces, 3u);
  EXPECT_EQ(kempe.euler, 0);
  EXPECT_EQ(kempe.genus, 1);

  auto ident = PermutationTuple({"A", "B", "C"}, {Permutation(4), Permutation(4), Permutation(4)});
  auto ti = tripartite_topology(ident);
  EXPECT_EQ(ti.euler, 8);
  EXPECT_EQ(ti.genus, -3);
  EXPECT_EQ(ti.components, 4u);
  for (auto g : ti.component_genus) EXPECT_EQ(g, 0);
}

TEST(Topology, DihedralTimesA1IsGenusZero) {
  for (int m = 2; m <= 8; ++m) {
    auto topo = tripartite_topology(coxeter_tuple(CoxeterSpec::tripartite(2, m, 2)));
    EXPECT_EQ(topo.genus, 0) << m;
    EXPECT_EQ(topo.components, 1u);
  }
  for (auto spec : {CoxeterSpec::tripartite(2, 3, 3), CoxeterSpec::tripartite(2, 3, 4), CoxeterSpec::tripartite(2, 3, 5)}) {
    EXPECT_EQ(tripartite_topology(coxeter_tuple(spec)).genus, 0);
  }
}

TEST(Topology, GaugeInvariant) {
  std::mt19937_64 rng(63);
  for (int trial = 0; trial < 50; ++trial) {
    auto t = random_tuple(3, 1 + rng() % 7, rng);
    auto m = t.relabeled(random_permutation(t.replicas(), rng), random_permutation(t.replicas(), rng));
    auto a = tripartite_topology(t), b = tripartite_topology(m);
    EXPECT_EQ(a.euler, b.euler);
    EXPECT_EQ(a.components, b.components);
    long long sum_chi = 0;
    for (auto g : a.component_genus) sum_chi += 2 - 2 * g;
    EXPECT_EQ(sum_chi, a.euler);
  }
}

}  // namespace
}  // namespace multinv
