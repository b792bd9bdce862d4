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
#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "multinv/coxeter.hpp"
#include "multinv/dyadic.hpp"
#include "multinv/permutation.hpp"
#include "multinv/tableau.hpp"

namespace multinv {

// All values below are exact log2 quantities.

/// Flat Renyi entropy of the bipartition R | complement.
inline Rational entanglement_entropy(const StabilizerTableau& t, PartySet r) {
  const PartySet rc = t.all_parties() & ~r;
  return Rational(static_cast<std::int64_t>(t.generator_count()) - static_cast<std::int64_t>(subgroup_order(t, r)) -
                      static_cast<std::int64_t>(subgroup_order(t, rc)),
                  2);
}

inline void require_tripartite(const StabilizerTableau& t, const char* what) {
  if (t.party_count() != 3) throw std::invalid_argument(std::string(what) + " needs exactly three parties");
}

/// E_2 = log|G| - log|G_A| - log|G_B| - log|G_C|.
inline Rational renyi2_multientropy(const StabilizerTableau& t) {
  require_tripartite(t, "renyi2_multientropy");
  auto tab = subgroup_table(t);
  return Rational(tab[7] - tab[1] - tab[2] - tab[4]);
}

/// E_n = log|G| - (n/2)(log|G_A| + log|G_B| + log|G_C|)
///       + ((n-2)/2) log|G_AB . G_BC . G_AC|, for any rational n (n = 1 is
/// the multi-entropy).
inline Rational renyi_multientropy_tripartite(const StabilizerTableau& t, Rational n) {
  require_tripartite(t, "renyi_multientropy_tripartite");
  auto tab = subgroup_table(t);
  const auto l = static_cast<std::int64_t>(product_subgroup_order(t, {3, 6, 5}));
  return Rational(tab[7]) - n / 2 * Rational(tab[1] + tab[2] + tab[4]) + (n - 2) / 2 * Rational(l);
}

/// Renyi multi-entropy from log2 Z_n: E_n = log2 Z / (1 - n).
inline Rational renyi_multientropy_from_log2z(Rational log2z, std::int64_t n) {
  if (n == 1) throw std::invalid_argument("renyi_multientropy_from_log2z: n = 1 is a limit");
  return log2z / Rational(1 - n);
}

/// Ingredients and value of log2 |Z| for a tripartite state, from the
/// GHZ / Bell pair decomposition.
struct TripartiteEvaluation {
  GhzExtraction counts;
  std::size_t vertices = 0;    // N = 2 n_rep
  std::size_t components = 0;  // c
  std::size_t n_ab = 0, n_bc = 0, n_ac = 0;
  Rational log2_z;
  bool degenerate_partition = false;
};

/// Index of each of t's sorted party labels in the tuple.
inline std::vector<std::size_t> tuple_party_map(const StabilizerTableau& t, const PermutationTuple& tuple) {
  std::vector<std::size_t> out;
  for (const auto& p : t.party_names()) {
    auto it = std::lower_bound(tuple.parties().begin(), tuple.parties().end(), p);
    if (it == tuple.parties().end() || *it != p) throw std::invalid_argument("tuple has no party '" + p + "'");
    out.push_back(static_cast<std::size_t>(it - tuple.parties().begin()));
  }
  return out;
}

/// Two parties: rho_A has a flat spectrum of rank 2^S, so each cycle of
/// sigma_A sigma_B^-1 of length l contributes 2^{-S (l - 1)}.
inline Rational bipartite_multi_invariant(const StabilizerTableau& t, const PermutationTuple& tuple) {
  if (t.party_count() != 2) throw std::invalid_argument("bipartite_multi_invariant needs exactly two parties");
  auto idx = tuple_party_map(t, tuple);
  const std::size_t cycles = (tuple.sigma(idx[0]) * tuple.sigma(idx[1]).inverse()).cycle_count();
  const Rational s = entanglement_entropy(t, 1);
  return -s * Rational(static_cast<std::int64_t>(tuple.replicas() - cycles));
}

/// log2 |Z| = p (c - N/2) + sum_XY m_XY (n_XY - N/2).
inline TripartiteEvaluation tripartite_multi_invariant(const StabilizerTableau& t, const PermutationTuple& tuple) {
  require_tripartite(t, "tripartite_multi_invariant");
  auto idx = tuple_party_map(t, tuple);
  const Permutation& sa = tuple.sigma(idx[0]);
  const Permutation& sb = tuple.sigma(idx[1]);
  const Permutation& sc = tuple.sigma(idx[2]);
  TripartiteEvaluation ev;
  ev.counts = ghz_extraction_counts(t);
  ev.degenerate_partition = ev.counts.degenerate_partition;
  ev.vertices = 2 * tuple.replicas();
  ev.components = components_of({sa, sb, sc});
  ev.n_ab = (sa * sb.inverse()).cycle_count();
  ev.n_bc = (sb * sc.inverse()).cycle_count();
  ev.n_ac = (sa * sc.inverse()).cycle_count();
  const Rational half_n(static_cast<std::int64_t>(ev.vertices), 2);
  auto r = [](std::size_t v) { return Rational(static_cast<std::int64_t>(v)); };
  ev.log2_z = Rational(ev.counts.p) * (r(ev.components) - half_n) + Rational(ev.counts.m_ab) * (r(ev.n_ab) - half_n) +
              Rational(ev.counts.m_bc) * (r(ev.n_bc) - half_n) + Rational(ev.counts.m_ac) * (r(ev.n_ac) - half_n);
  return ev;
}

/// The grouped form written directly in subgroup orders:
///   sum_X (N - n_XY - n_XZ)/2 log|G_X| - sum_XY (N/2 - n_XY)/2 log|G_XY|
///   + (n_AB + n_BC + n_AC - N/2 - 2)/2 log|G_AB . G_BC . G_AC|.
/// Equal to tripartite_multi_invariant on connected genus-zero tuples only;
/// at genus g it misses a factor |G|^g.
inline Rational grouped_tripartite_formula(const StabilizerTableau& t, const PermutationTuple& tuple) {
  TripartiteEvaluation ev = tripartite_multi_invariant(t, tuple);
  auto tab = subgroup_table(t);
  const auto l = static_cast<std::int64_t>(product_subgroup_order(t, {3, 6, 5}));
  const std::int64_t n = static_cast<std::int64_t>(ev.vertices);
  const std::int64_t ab = ev.n_ab, bc = ev.n_bc, ac = ev.n_ac;
  Rational out;
  out += Rational(n - ab - ac, 2) * tab[1];
  out += Rational(n - ab - bc, 2) * tab[2];
  out += Rational(n - bc - ac, 2) * tab[4];
  out -= Rational(n - 2 * ab, 4) * tab[3];
  out -= Rational(n - 2 * bc, 4) * tab[6];
  out -= Rational(n - 2 * ac, 4) * tab[5];
  out += Rational(2 * (ab + bc + ac) - n - 4, 4) * l;
  return out;
}

/// log2 k_{G_S} for every subset S: sum over R in S of (-1)^{|S \ R|} log|G_R|.
struct KTable {
  std::size_t party_count = 0;
  std::vector<std::int64_t> log2_k;
  std::int64_t operator[](PartySet s) const { return log2_k.at(s); }
};

inline KTable k_table(const SubgroupTable& st) {
  KTable kt;
  kt.party_count = st.party_count;
  kt.log2_k.resize(st.log2_order.size());
  for (PartySet s = 0; s < kt.log2_k.size(); ++s) {
    std::int64_t v = 0;
    // Iterate subsets r of s.
    for (PartySet r = s;; r = (r - 1) & s) {
      int sign = (std::popcount(s & ~r) & 1) ? -1 : 1;
      v += sign * st[r];
      if (r == 0) break;
    }
    kt.log2_k[s] = v;
  }
  return kt;
}

/// Coefficients c_R with log2 Z^2 = sum_R c_R log2|G_R| under the Coxeter
/// counting formula
///   Z^2 = k_G prod_{S proper, nonempty} k_{G_S}^{n_S} / |G|^{n_rep},
/// where n_S counts the components of the Cayley graph keeping the colors in
/// S (so S names the retained parties) and n_rep = |K| / 2.
inline std::vector<std::int64_t> coxeter_exponents(const SubgraphCounts& sc, std::size_t q) {
  const PartySet full = (PartySet{1} << q) - 1;
  std::vector<std::int64_t> weight(std::size_t{1} << q, 0);  // n'_S
  for (PartySet s = 1; s < full; ++s) weight[s] = static_cast<std::int64_t>(sc.n[s]);
  weight[full] = 1;
  std::vector<std::int64_t> c(weight.size(), 0);
  for (PartySet r = 1; r <= full; ++r) {
    std::int64_t v = 0;
    for (PartySet s = r; s <= full; ++s) {
      if ((s & r) != r) continue;
      v += ((std::popcount(s & ~r) & 1) ? -1 : 1) * weight[s];
    }
    c[r] = v;
  }
  c[full] -= static_cast<std::int64_t>(sc.replicas);
  return c;
}

inline std::vector<std::int64_t> coxeter_exponents(const CoxeterSpec& spec) {
  return coxeter_exponents(subgraph_counts(generate_coxeter(spec), spec), spec.size());
}

/// Map from the state's sorted party labels to spec generator indices.
inline std::vector<std::size_t> spec_party_map(const std::vector<std::string>& state_parties, const CoxeterSpec& spec) {
  std::vector<std::size_t> out;
  for (const auto& p : state_parties) {
    std::size_t found = spec.size();
    for (std::size_t i = 0; i < spec.size(); ++i) {
      if (spec.parties()[i] == p) found = i;
    }
    if (found == spec.size()) throw std::invalid_argument("Coxeter spec has no party '" + p + "'");
    out.push_back(found);
  }
  if (out.size() != spec.size()) throw std::invalid_argument("Coxeter spec and state have different party counts");
  return out;
}

/// Applies a linear form over subsets of spec generators to a table indexed by
/// subsets of the state's parties.
inline Rational apply_subset_form(const std::vector<std::int64_t>& coeffs, const std::vector<int>& table,
                                  const std::vector<std::size_t>& party_to_gen) {
  Rational out;
  for (PartySet s = 0; s < table.size(); ++s) {
    PartySet g = 0;
    for (std::size_t p = 0; p < party_to_gen.size(); ++p) {
      if ((s >> p) & 1u) g |= PartySet{1} << party_to_gen[p];
    }
    out += Rational(coeffs[g] * table[s]);
  }
  return out;
}

/// log2 Z^2 predicted by the Coxeter counting conjecture.
inline Rational coxeter_invariant_conjecture(const StabilizerTableau& t, const CoxeterSpec& spec) {
  auto map = spec_party_map(t.party_names(), spec);
  return apply_subset_form(coxeter_exponents(spec), subgroup_table(t).log2_order, map);
}

/// log2 Z^2 = sum over unordered bipartitions {R, R^c} of
/// log|G_R| + log|G_{R^c}| - log|G|.
inline Rational bipartition_product_form(const StabilizerTableau& t) {
  auto tab = subgroup_table(t);
  const PartySet full = tab.full();
  Rational out;
  for (PartySet r = 1; r < full; ++r) {
    PartySet rc = full & ~r;
    if (r > rc) continue;  // each pair once
    out += Rational(tab[r] + tab[rc] - tab[full]);
  }
  return out;
}

/// Tripartite Coxeter invariant written without |G|, as
///   Z^2 = (|G_A|^a_A |G_B|^a_B |G_C|^a_C / |G_AB|^b_AB |G_BC|^b_BC |G_AC|^b_AC)^2.
/// On pure states log Z is linear in the GHZ / Bell pair / local-qubit
/// content, so the exponents follow from the conjecture on those states.
struct TripartiteDisplay {
  std::array<Rational, 3> single;  // A, B, C
  std::array<Rational, 3> pair;    // AB, BC, AC
  /// The GHZ value agrees with the exponents derived from Bell pairs.
  bool consistent = false;
};

inline TripartiteDisplay tripartite_display_exponents(const CoxeterSpec& spec) {
  if (spec.size() != 3) throw std::invalid_argument("tripartite_display_exponents needs q = 3");
  const std::vector<std::string> abc = {"A", "B", "C"};
  auto state = [&](std::vector<std::string> gens, std::vector<std::string> parties) {
    std::vector<PauliString> ps;
    for (const auto& g : gens) ps.push_back(PauliString::parse(g));
    return StabilizerTableau(std::move(ps), std::move(parties), abc);
  };
  auto value = [&](const StabilizerTableau& t) { return coxeter_invariant_conjecture(t, spec); };
  const std::array<std::pair<std::string, std::string>, 3> pairs = {{{"A", "B"}, {"B", "C"}, {"A", "C"}}};
  TripartiteDisplay d;
  for (std::size_t i = 0; i < 3; ++i) {
    d.pair[i] = -value(state({"XX", "ZZ"}, {pairs[i].first, pairs[i].second})) / 4;
  }
  // A local qubit leaves Z unchanged, which fixes a_X = b_XY + b_XZ.
  d.single[0] = d.pair[0] + d.pair[2];
  d.single[1] = d.pair[0] + d.pair[1];
  d.single[2] = d.pair[1] + d.pair[2];
  bool ok = true;
  for (const auto& x : abc) ok = ok && value(state({"Z"}, {x})) == Rational(0);
  Rational ghz = value(state({"XXX", "ZZI", "IZZ"}, abc));
  d.consistent = ok && ghz == Rational(-2) * (d.pair[0] + d.pair[1] + d.pair[2]);
  return d;
}

/// Trusted Kempe value next to the two readings of the displayed closed
/// form |G_A||G_B||G_C| / |G_AB . G_BC . G_AC|.
struct KempeRecord {
  Rational trusted_log2_z;       // from the GHZ / Bell decomposition
  Rational display_as_z2_log2_z; // display read as Z^2
  Rational display_as_z_log2_z;  // display read as Z
  bool display_as_z2_agrees = false;
  bool display_as_z_agrees = false;
};

inline KempeRecord kempe_invariant(const StabilizerTableau& t) {
  require_tripartite(t, "kempe_invariant");
  KempeRecord rec;
  rec.trusted_log2_z = tripartite_multi_invariant(t, kempe_tuple(t.party_names())).log2_z;
  auto tab = subgroup_table(t);
  const auto l = static_cast<std::int64_t>(product_subgroup_order(t, {3, 6, 5}));
  Rational rhs(tab[1] + tab[2] + tab[4] - l);
  rec.display_as_z2_log2_z = rhs / 2;
  rec.display_as_z_log2_z = rhs;
  rec.display_as_z2_agrees = rec.display_as_z2_log2_z == rec.trusted_log2_z;
  rec.display_as_z_agrees = rec.display_as_z_log2_z == rec.trusted_log2_z;
  return rec;
}

}  // namespace multinv
