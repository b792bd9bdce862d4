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

#include <map>
#include <random>
#include <set>

#include "multinv/convert.hpp"
#include "multinv/random.hpp"
#include "multinv/tableau.hpp"

namespace multinv {
namespace {

StabilizerTableau make(std::vector<std::string> gens, std::vector<std::string> parties) {
  std::vector<PauliString> ps;
  for (const auto& g : gens) ps.push_back(PauliString::parse(g));
  return StabilizerTableau(std::move(ps), std::move(parties));
}

StabilizerTableau ghz() { return make({"XXX", "ZZI", "IZZ"}, {"A", "B", "C"}); }

// Oracle: every group element, by enumerating all 2^k exponent vectors.
std::vector<PauliString> all_elements(const StabilizerTableau& t) {
  std::vector<PauliString> out;
  const std::size_t k = t.generator_count();
  for (std::size_t m = 0; m < (std::size_t{1} << k); ++m) {
    BitVector e(k);
    for (std::size_t i = 0; i < k; ++i) e.set(i, (m >> i) & 1u);
    out.push_back(t.element(e));
  }
  return out;
}

bool supported_in(const StabilizerTableau& t, const PauliString& p, PartySet r) {
  for (std::size_t q = 0; q < t.qubits(); ++q) {
    if ((r >> t.qubit_party_index(q)) & 1u) continue;
    if (p.x().get(q) || p.z().get(q)) return false;
  }
  return true;
}

std::size_t log2_exact(std::size_t v) {
  std::size_t l = 0;
  while ((std::size_t{1} << l) < v) ++l;
  EXPECT_EQ(std::size_t{1} << l, v);
  return l;
}

std::size_t subgroup_order_oracle(const StabilizerTableau& t, PartySet r) {
  std::size_t count = 0;
  for (const auto& p : all_elements(t)) count += supported_in(t, p, r);
  return log2_exact(count);
}

std::size_t product_order_oracle(const StabilizerTableau& t, const std::vector<PartySet>& subsets) {
  std::set<std::string> acc = {PauliString(t.qubits()).to_string()};
  auto elems = all_elements(t);
  for (PartySet s : subsets) {
    std::set<std::string> next;
    for (const auto& a : acc) {
      for (const auto& e : elems) {
        if (supported_in(t, e, s)) next.insert((PauliString::parse(a) * e).to_string());
      }
    }
    acc = std::move(next);
  }
  return log2_exact(acc.size());
}

double fidelity_gap(const StateVector& a, const StateVector& b) {
  std::complex<double> ov = 0;
  for (std::size_t i = 0; i < a.size(); ++i) ov += std::conj(a[i]) * b[i];
  return std::abs(1.0 - std::abs(ov));
}

TEST(Tableau, Validation) {
  EXPECT_THROW(make({"XX", "ZI"}, {"A", "B"}), InvalidStabilizer);   // anticommute
  EXPECT_THROW(make({"XX", "-XX"}, {"A", "B"}), InvalidStabilizer);  // -I
  EXPECT_THROW(make({"iXX"}, {"A", "B"}), InvalidStabilizer);        // not Hermitian
  EXPECT_THROW(make({"XXX", "YYI", "ZZZ"}, {"A", "B", "C"}), InvalidStabilizer);  // XXX, ZZZ anticommute
  // Redundant generator is dropped.
  auto t = make({"XX", "ZZ", "-YY"}, {"A", "B"});
  EXPECT_EQ(t.generator_count(), 2u);
  EXPECT_THROW(make({"XX", "ZZ", "YY"}, {"A", "B"}), InvalidStabilizer);
}

TEST(Tableau, SubgroupOrderExamples) {
  auto bell = make({"XX", "ZZ"}, {"A", "B"});
  EXPECT_EQ(subgroup_order(bell, {"A"}), 0u);
  EXPECT_EQ(subgroup_order(ghz(), {"A", "B"}), 1u);
  EXPECT_EQ(subgroup_order(ghz(), {"A", "B", "C"}), 3u);
  EXPECT_EQ(subgroup_order_oracle(ghz(), 3), 1u);
}

TEST(Tableau, SubgroupTableExamples) {
  auto tab = subgroup_table(ghz());
  std::vector<int> expect = {0, 0, 0, 1, 0, 1, 1, 3};  // bitmask order: -,A,B,AB,C,AC,BC,ABC
  EXPECT_EQ(tab.log2_order, expect);
  for (PartySet s = 0; s < 8; ++s) EXPECT_EQ(static_cast<std::size_t>(tab[s]), subgroup_order_oracle(ghz(), s));

  auto bb = make({"XXII", "ZZII", "IIXX", "IIZZ"}, {"A", "B", "A", "B"});
  EXPECT_EQ(subgroup_table(bb).log2_order, (std::vector<int>{0, 0, 0, 4}));
  auto prod = make({"ZI", "IZ"}, {"A", "B"});
  EXPECT_EQ(subgroup_table(prod).log2_order, (std::vector<int>{0, 1, 1, 2}));
}

TEST(Tableau, ProductSubgroupExamples) {
  EXPECT_EQ(product_subgroup_order(ghz(), {3, 6, 5}), 2u);
  EXPECT_EQ(product_order_oracle(ghz(), {3, 6, 5}), 2u);
  EXPECT_EQ(product_subgroup_order(ghz(), {3}), subgroup_order(ghz(), 3));
  EXPECT_EQ(product_subgroup_order(ghz(), {1, 2, 4}), 0u);
}

TEST(Tableau, GhzExtractionExamples) {
  auto g = ghz_extraction_counts(ghz());
  EXPECT_EQ(std::tie(g.p, g.m_ab, g.m_bc, g.m_ac), std::make_tuple(1, 0, 0, 0));
  auto b = ghz_extraction_counts(make({"XXI", "ZZI", "IIZ"}, {"A", "B", "C"}));
  EXPECT_EQ(std::tie(b.p, b.m_ab, b.m_bc, b.m_ac), std::make_tuple(0, 1, 0, 0));
}

TEST(Tableau, RandomAgainstEnumeration) {
  std::mt19937_64 rng(21);
  const std::vector<std::string> labels = {"A", "B", "C"};
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = 2 + rng() % 6;
    auto t = random_tableau(random_parties(n, labels, rng), rng);
    auto tab = subgroup_table(t);
    for (PartySet s = 0; s <= tab.full(); ++s) {
      EXPECT_EQ(static_cast<std::size_t>(tab[s]), subgroup_order_oracle(t, s));
      for (PartySet r = 0; r <= tab.full(); ++r) {
        if ((r & s) == r) EXPECT_LE(tab[r], tab[s]);
      }
    }
    EXPECT_EQ(tab[0], 0);
    EXPECT_EQ(static_cast<std::size_t>(tab[tab.full()]), t.generator_count());
    if (t.party_count() == 3) {
      std::vector<PartySet> pairs = {3, 6, 5};
      EXPECT_EQ(product_subgroup_order(t, pairs), product_order_oracle(t, pairs));
      // |G_AB||G_BC||G_AC| = |G||G_A||G_B||G_C|
      EXPECT_EQ(tab[3] + tab[6] + tab[5], tab[7] + tab[1] + tab[2] + tab[4]);
      auto g = ghz_extraction_counts(t);
      EXPECT_GE(std::min({g.p, g.m_ab, g.m_bc, g.m_ac}), 0);
      // Entropy of A = (|G| - |G_A| - |G_BC|)/2 counts one bit per GHZ and Bell pair touching A.
      int twice_sa = tab[7] - tab[1] - tab[6];
      EXPECT_EQ(twice_sa, 2 * (g.m_ab + g.m_ac + g.p));
    }
  }
}

TEST(Tableau, CanonicalFormExamples) {
  EXPECT_EQ(canonical_form(make({"ZZ", "XX"}, {"A", "B"})).x_rows, 1u);
  EXPECT_EQ(canonical_form(make({"ZII", "IZI", "IIZ"}, {"A", "B", "C"})).x_rows, 0u);
  EXPECT_EQ(canonical_form(ghz()).x_rows, 1u);
}

TEST(Tableau, CanonicalFormPreservesGroup) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 1 + rng() % 12;
    auto t = random_tableau(std::vector<std::string>(n, "A"), rng);
    CanonicalForm cf = canonical_form(t);
    ASSERT_EQ(cf.rows.size(), n);
    BitMatrix xs(n);
    for (const auto& g : t.generators()) xs.push_row(g.x());
    EXPECT_EQ(cf.x_rows, rank(xs));
    for (std::size_t r = cf.x_rows; r < n; ++r) EXPECT_TRUE(cf.rows[r].x().none());
    // Same group including signs: build from canonical rows and compare dense states.
    auto t2 = StabilizerTableau(cf.rows, t.qubit_parties());
    BitMatrix a = t.symplectic_matrix(), b = t2.symplectic_matrix();
    EXPECT_TRUE(same_row_space(a, b));
    if (n <= 8) EXPECT_LT(fidelity_gap(to_dense(t), to_dense(t2)), 1e-9);
  }
}

TEST(Tableau, ToDenseExamples) {
  auto bell = to_dense(make({"XX", "ZZ"}, {"A", "B"}));
  const double r = 1 / std::sqrt(2.0);
  EXPECT_NEAR(bell[0].real(), r, 1e-12);
  EXPECT_NEAR(bell[3].real(), r, 1e-12);
  EXPECT_NEAR(std::abs(bell[1]) + std::abs(bell[2]), 0, 1e-12);
  auto z = to_dense(make({"Z"}, {"A"}));
  EXPECT_NEAR(z[0].real(), 1, 1e-12);
  auto g = to_dense(ghz());
  EXPECT_NEAR(g[0].real(), r, 1e-12);
  EXPECT_NEAR(g[7].real(), r, 1e-12);
}

TEST(Tableau, ToDenseIsFixedByGenerators) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = 1 + rng() % 8;
    auto t = random_tableau(std::vector<std::string>(n, "A"), rng);
    StateVector v = to_dense(t);
    for (const auto& g : t.generators()) EXPECT_LT(fidelity_gap(v, apply_pauli(g, v)), 1e-9);
    double nn = 0;
    for (auto a : v) nn += std::norm(a);
    EXPECT_NEAR(nn, 1.0, 1e-9);
  }
}

TEST(Tableau, ToGraphStateExamples) {
  ColoredGraph path(3);
  path.add_edge(0, 1);
  path.add_edge(1, 2);
  auto gf = to_graph_state(graph_tableau(path));
  EXPECT_EQ(gf.graph.edges(), path.edges());
  EXPECT_TRUE(gf.local_cliffords.empty());

  auto bell = to_graph_state(make({"XX", "ZZ"}, {"A", "B"}));
  EXPECT_EQ(bell.graph.edges().size(), 1u);
  EXPECT_EQ(bell.local_cliffords.size(), 1u);
  EXPECT_EQ(bell.local_cliffords[0].kind, GateKind::H);

  auto zero = to_graph_state(zero_state({"A", "B", "C"}));
  EXPECT_TRUE(zero.graph.edges().empty());
  ASSERT_EQ(zero.local_cliffords.size(), 3u);
  for (const auto& g : zero.local_cliffords) EXPECT_EQ(g.kind, GateKind::H);
}

TEST(Tableau, ToGraphStateMatchesDense) {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 1 + rng() % 8;
    auto t = random_tableau(random_parties(n, {"A", "B"}, rng), rng);
    auto gf = to_graph_state(t);
    for (const auto& g : gf.local_cliffords) EXPECT_FALSE(g.two_qubit());
    StateVector v = to_dense(t);
    apply_circuit(v, gf.local_cliffords);
    EXPECT_LT(fidelity_gap(v, graph_dense(gf.graph)), 1e-9);
    EXPECT_EQ(gf.graph.parties(), t.qubit_parties());
  }
}

TEST(Tableau, StabilizerFromDense) {
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t n = 1 + rng() % 5;
    auto t = random_tableau(std::vector<std::string>(n, "A"), rng);
    auto back = stabilizer_from_dense(to_dense(t), t.qubit_parties());
    EXPECT_TRUE(same_row_space(back.symplectic_matrix(), t.symplectic_matrix()));
    EXPECT_LT(fidelity_gap(to_dense(back), to_dense(t)), 1e-9);
  }
  // W state is not a stabilizer state.
  StateVector w(8);
  w[1] = w[2] = w[4] = 1 / std::sqrt(3.0);
  EXPECT_THROW(stabilizer_from_dense(w, {"A", "B", "C"}), NotStabilizerState);
}

}  // namespace
}  // namespace multinv
