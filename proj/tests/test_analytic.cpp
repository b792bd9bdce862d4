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

#include "multinv/analytic.hpp"
#include "multinv/engines.hpp"
#include "multinv/random.hpp"

namespace multinv {
namespace {

const std::vector<std::string> kABC = {"A", "B", "C"};

StabilizerTableau make(std::vector<std::string> gens, std::vector<std::string> parties,
                       std::vector<std::string> extra = kABC) {
  std::vector<PauliString> ps;
  for (const auto& g : gens) ps.push_back(PauliString::parse(g));
  return StabilizerTableau(std::move(ps), std::move(parties), extra);
}

StabilizerTableau ghz() { return make({"XXX", "ZZI", "IZZ"}, kABC); }
StabilizerTableau bell_ab() { return make({"XX", "ZZ"}, {"A", "B"}); }

StabilizerTableau random_state(std::size_t n, const std::vector<std::string>& labels, std::mt19937_64& rng) {
  auto parties = random_parties(n, labels, rng);
  auto t = random_tableau(parties, rng);
  return StabilizerTableau(t.generators(), parties, labels);
}

Rational log2z(const StabilizerTableau& t, const PermutationTuple& tuple) {
  auto r = evaluate(t, tuple, Method::Projector);
  EXPECT_FALSE(r.is_zero);
  return *r.magnitude_log2;
}

// Oracle: -log2 Tr rho_R^2 from the dense vector.
double purity_entropy(const StabilizerTableau& t, PartySet r) {
  auto psi = to_dense(t);
  std::size_t in_mask = 0;
  for (std::size_t q = 0; q < t.qubits(); ++q) {
    if ((r >> t.qubit_party_index(q)) & 1u) in_mask |= std::size_t{1} << q;
  }
  // Tr rho_R^2 = sum over (i, j, k, l) with matching complements.
  double tr = 0;
  const std::size_t dim = psi.size();
  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t b = 0; b < dim; ++b) {
      if ((a & ~in_mask) != (b & ~in_mask)) continue;
      // rho_R[aR, bR] paired with rho_R[bR, aR] over independent complements.
      for (std::size_t c = 0; c < dim; ++c) {
        if ((c & in_mask) != (b & in_mask)) continue;
        std::size_t d = (a & in_mask) | (c & ~in_mask);
        tr += std::real(psi[a] * std::conj(psi[b]) * psi[c] * std::conj(psi[d]));
      }
    }
  }
  return -std::log2(tr);
}

TEST(Analytic, EntanglementEntropy) {
  auto g = ghz();
  EXPECT_EQ(entanglement_entropy(g, 0b001), Rational(1));
  EXPECT_EQ(entanglement_entropy(g, 0b011), Rational(1));
  EXPECT_EQ(entanglement_entropy(g, 0b111), Rational(0));
  auto b = bell_ab();
  EXPECT_EQ(entanglement_entropy(b, 0b001), Rational(1));
  EXPECT_EQ(entanglement_entropy(b, 0b100), Rational(0));
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 10; ++trial) {
    auto t = random_state(5, kABC, rng);
    for (PartySet r = 1; r < 7; ++r) {
      EXPECT_NEAR(boost::rational_cast<double>(entanglement_entropy(t, r)), purity_entropy(t, r), 1e-9);
    }
  }
}

TEST(Analytic, Renyi2MultiEntropy) {
  EXPECT_EQ(renyi2_multientropy(ghz()), Rational(3));
  EXPECT_EQ(renyi2_multientropy(bell_ab()), Rational(2));
  auto three = make({"XXIIII", "ZZIIII", "IIXXII", "IIZZII", "IIIIXX", "IIIIZZ"}, {"A", "B", "B", "C", "C", "A"});
  EXPECT_EQ(renyi2_multientropy(three), Rational(6));
  std::mt19937_64 rng(72);
  for (int trial = 0; trial < 20; ++trial) {
    auto t = random_state(5, kABC, rng);
    EXPECT_EQ(renyi2_multientropy(t), -log2z(t, multi_entropy_tuple(2, 3)));
  }
}

TEST(Analytic, RenyiNMultiEntropy) {
  EXPECT_EQ(renyi_multientropy_tripartite(ghz(), 3), Rational(4));
  EXPECT_EQ(renyi_multientropy_tripartite(ghz(), 2), Rational(3));
  EXPECT_EQ(renyi_multientropy_from_log2z(Rational(-8), 3), Rational(4));
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 10; ++trial) {
    auto t = random_state(4, kABC, rng);
    EXPECT_EQ(renyi_multientropy_tripartite(t, 3), renyi_multientropy_from_log2z(log2z(t, multi_entropy_tuple(3, 3)), 3));
  }
}

TEST(Analytic, TripartiteFormulaMatchesEngine) {
  std::mt19937_64 rng(74);
  for (int trial = 0; trial < 60; ++trial) {
    auto t = random_state(2 + rng() % 4, kABC, rng);
    auto tuple = random_tuple(3, 1 + rng() % 4, rng);
    EXPECT_EQ(tripartite_multi_invariant(t, tuple).log2_z, log2z(t, tuple)) << trial;
  }
  auto me = multi_entropy_tuple(3, 3);
  EXPECT_EQ(tripartite_multi_invariant(ghz(), me).log2_z, Rational(-8));
}

TEST(Analytic, BipartiteFormulaMatchesEngine) {
  std::mt19937_64 rng(79);
  for (int trial = 0; trial < 40; ++trial) {
    auto t = random_state(1 + rng() % 5, {"A", "B"}, rng);
    auto tuple = random_tuple(2, 1 + rng() % 5, rng);
    EXPECT_EQ(bipartite_multi_invariant(t, tuple), log2z(t, tuple));
  }
  EXPECT_EQ(bipartite_multi_invariant(make({"XX", "ZZ"}, {"A", "B"}, {}), renyi_tuple(3)), Rational(-2));
}

TEST(Analytic, GroupedFormula) {
  std::mt19937_64 rng(75);
  int genus0 = 0, higher = 0;
  for (int trial = 0; trial < 200; ++trial) {
    auto t = random_state(2 + rng() % 4, kABC, rng);
    auto tuple = random_tuple(3, 1 + rng() % 5, rng);
    auto topo = tripartite_topology(tuple);
    if (topo.components != 1) continue;
    Rational trusted = tripartite_multi_invariant(t, tuple).log2_z;
    Rational grouped = grouped_tripartite_formula(t, tuple);
    if (topo.genus == 0) {
      EXPECT_EQ(grouped, trusted);
      ++genus0;
    } else {
      // The grouped form drops a |G|^g factor.
      EXPECT_EQ(grouped + Rational(topo.genus) * Rational(subgroup_table(t)[7]), trusted);
      ++higher;
    }
  }
  EXPECT_GT(genus0, 10);
  EXPECT_GT(higher, 10);
  EXPECT_EQ(grouped_tripartite_formula(ghz(), multi_entropy_tuple(2, 3)), Rational(-3));
}

TEST(Analytic, KTable) {
  auto kb = k_table(subgroup_table(bell_ab()));
  EXPECT_EQ(kb[0b011], 2);
  EXPECT_EQ(kb[0b001], 0);
  auto kg = k_table(subgroup_table(ghz()));
  EXPECT_EQ(kg[0b111], 0);
  EXPECT_EQ(kg[0b011], 1);
}

TEST(Analytic, CoxeterConjectureMatchesEngine) {
  std::mt19937_64 rng(76);
  std::vector<CoxeterSpec> specs = {CoxeterSpec::tripartite(2, 3, 3), CoxeterSpec::all_commuting(3)};
  for (int m = 2; m <= 4; ++m) specs.push_back(CoxeterSpec::tripartite(2, m, 2));
  for (const auto& spec : specs) {
    auto tuple = coxeter_tuple(spec);
    for (int trial = 0; trial < 6; ++trial) {
      auto t = random_state(2 + rng() % 4, kABC, rng);
      EXPECT_EQ(coxeter_invariant_conjecture(t, spec), Rational(2) * log2z(t, tuple));
    }
  }
}

TEST(Analytic, BipartitionProductForm) {
  std::mt19937_64 rng(77);
  for (std::size_t q : {3u, 4u}) {
    auto spec = CoxeterSpec::all_commuting(q);
    auto labels = spec.parties();
    for (int trial = 0; trial < 10; ++trial) {
      auto t = random_state(2 + rng() % 4, labels, rng);
      EXPECT_EQ(bipartition_product_form(t), coxeter_invariant_conjecture(t, spec));
      EXPECT_EQ(bipartition_product_form(t), Rational(2) * log2z(t, multi_entropy_tuple(2, q, labels)));
    }
  }
  auto c4 = coxeter_exponents(CoxeterSpec::all_commuting(4));
  for (PartySet r = 1; r < 15; ++r) EXPECT_EQ(c4[r], 1);
  EXPECT_EQ(c4[15], -7);
}

TEST(Analytic, DisplayExponents) {
  auto check = [](const CoxeterSpec& spec, std::array<Rational, 3> a, std::array<Rational, 3> b) {
    auto d = tripartite_display_exponents(spec);
    EXPECT_TRUE(d.consistent);
    EXPECT_EQ(d.single, a);
    EXPECT_EQ(d.pair, b);
  };
  check(CoxeterSpec::tripartite(2, 3, 3), {7, 7, 8}, {3, 4, 4});
  check(CoxeterSpec::tripartite(2, 3, 4), {15, 14, 17}, {6, 8, 9});
  check(CoxeterSpec::tripartite(2, 3, 5), {39, 35, 44}, {15, 20, 24});
  for (std::int64_t n = 2; n <= 8; ++n) {
    check(CoxeterSpec::tripartite(2, static_cast<int>(n), 2), {Rational(n), Rational(3 * n, 2) - 1, Rational(3 * n, 2) - 1},
          {Rational(n, 2), Rational(n - 1), Rational(n, 2)});
  }
}

TEST(Analytic, Kempe) {
  auto g = kempe_invariant(ghz());
  EXPECT_EQ(g.trusted_log2_z, Rational(-2));
  EXPECT_EQ(g.display_as_z2_log2_z, Rational(-1));
  EXPECT_EQ(g.display_as_z_log2_z, Rational(-2));
  EXPECT_FALSE(g.display_as_z2_agrees);
  EXPECT_TRUE(g.display_as_z_agrees);
  auto dense = evaluate(ghz(), kempe_tuple(), Method::Dense);
  EXPECT_NEAR(dense.numeric.real(), 0.25, 1e-12);

  auto b = kempe_invariant(bell_ab());
  EXPECT_EQ(b.trusted_log2_z, Rational(-2));
  EXPECT_EQ(b.display_as_z2_log2_z, Rational(-1));

  std::mt19937_64 rng(78);
  for (int trial = 0; trial < 20; ++trial) {
    auto t = random_state(2 + rng() % 4, kABC, rng);
    auto rec = kempe_invariant(t);
    EXPECT_EQ(rec.trusted_log2_z, log2z(t, kempe_tuple()));
    EXPECT_TRUE(rec.display_as_z_agrees);
  }
}

}  // namespace
}  // namespace multinv
