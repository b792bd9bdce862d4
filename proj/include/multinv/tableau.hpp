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
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "multinv/clifford.hpp"
#include "multinv/gf2.hpp"
#include "multinv/pauli.hpp"

namespace multinv {

/// Bitmask over the sorted party labels of a state; bit i is party i.
using PartySet = std::uint32_t;

/// Raised when a generator set does not describe a valid stabilizer state.
class InvalidStabilizer : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Ordered generators of a stabilizer group together with a party label for
/// every qubit. Construction validates the group: generators must be
/// Hermitian and pairwise commuting; dependent generators are dropped, and a
/// dependency that produces -I is rejected.
class StabilizerTableau {
 public:
  StabilizerTableau() = default;

  /// `extra_parties` may name parties that own no qubits.
  StabilizerTableau(std::vector<PauliString> generators, std::vector<std::string> qubit_parties,
                    const std::vector<std::string>& extra_parties = {})
      : qubit_parties_(std::move(qubit_parties)) {
    n_ = qubit_parties_.size();
    for (const auto& g : generators) {
      if (g.size() != n_) throw InvalidStabilizer("generator length does not match qubit count");
      if (!g.is_hermitian()) throw InvalidStabilizer("generator " + g.to_string() + " is not Hermitian");
    }
    for (std::size_t i = 0; i < generators.size(); ++i) {
      for (std::size_t j = i + 1; j < generators.size(); ++j) {
        if (!generators[i].commutes(generators[j])) {
          throw InvalidStabilizer("generators " + generators[i].to_string() + " and " +
                                  generators[j].to_string() + " anticommute");
        }
      }
    }
    check_no_minus_identity(generators);
    BitMatrix sym(2 * n_);
    for (const auto& g : generators) sym.push_row(symplectic_row(g));
    for (std::size_t r : independent_rows(sym)) generators_.push_back(std::move(generators[r]));
    party_names_ = qubit_parties_;
    party_names_.insert(party_names_.end(), extra_parties.begin(), extra_parties.end());
    std::sort(party_names_.begin(), party_names_.end());
    party_names_.erase(std::unique(party_names_.begin(), party_names_.end()), party_names_.end());
    if (party_names_.size() > 16) throw std::invalid_argument("at most 16 parties are supported");
  }

  /// All qubits assigned to a single party "A".
  static StabilizerTableau single_party(std::vector<PauliString> generators) {
    std::size_t n = generators.empty() ? 0 : generators.front().size();
    return StabilizerTableau(std::move(generators), std::vector<std::string>(n, "A"));
  }

  std::size_t qubits() const { return n_; }
  std::size_t generator_count() const { return generators_.size(); }
  bool is_pure() const { return generators_.size() == n_; }
  const std::vector<PauliString>& generators() const { return generators_; }
  const PauliString& generator(std::size_t i) const { return generators_[i]; }

  const std::vector<std::string>& qubit_parties() const { return qubit_parties_; }
  const std::vector<std::string>& party_names() const { return party_names_; }
  std::size_t party_count() const { return party_names_.size(); }

  /// True when some party owns no qubits.
  bool has_empty_party() const {
    std::vector<bool> used(party_names_.size(), false);
    for (std::size_t q = 0; q < n_; ++q) used[qubit_party_index(q)] = true;
    return std::find(used.begin(), used.end(), false) != used.end();
  }
  PartySet all_parties() const {
    return party_names_.size() >= 32 ? ~PartySet{0} : (PartySet{1} << party_names_.size()) - 1;
  }

  std::size_t party_index(const std::string& label) const {
    auto it = std::lower_bound(party_names_.begin(), party_names_.end(), label);
    if (it == party_names_.end() || *it != label) throw std::invalid_argument("unknown party '" + label + "'");
    return static_cast<std::size_t>(it - party_names_.begin());
  }

  PartySet party_set(const std::vector<std::string>& labels) const {
    PartySet s = 0;
    for (const auto& l : labels) s |= PartySet{1} << party_index(l);
    return s;
  }

  std::size_t qubit_party_index(std::size_t q) const { return party_index(qubit_parties_[q]); }

  /// Qubits whose party is in `parties`.
  std::vector<std::size_t> qubits_in(PartySet parties) const {
    std::vector<std::size_t> out;
    for (std::size_t q = 0; q < n_; ++q) {
      if ((parties >> qubit_party_index(q)) & 1u) out.push_back(q);
    }
    return out;
  }

  /// k x 2n matrix; columns [0,n) are x bits and [n,2n) are z bits.
  BitMatrix symplectic_matrix() const {
    BitMatrix m(2 * n_);
    for (const auto& g : generators_) m.push_row(symplectic_row(g));
    return m;
  }

  /// Group element prod_i g_i^{e_i}, multiplied in generator order.
  PauliString element(const BitVector& exponents) const {
    if (exponents.size() != generators_.size()) throw std::invalid_argument("exponent length mismatch");
    PauliString acc(n_);
    for (std::size_t i = exponents.find_first(); i < exponents.size(); i = exponents.find_next(i + 1)) {
      acc *= generators_[i];
    }
    return acc;
  }

  static BitVector symplectic_row(const PauliString& p) {
    const std::size_t n = p.size();
    BitVector v(2 * n);
    for (std::size_t j = p.x().find_first(); j < n; j = p.x().find_next(j + 1)) v.set(j);
    for (std::size_t j = p.z().find_first(); j < n; j = p.z().find_next(j + 1)) v.set(n + j);
    return v;
  }

 private:
  static void check_no_minus_identity(std::vector<PauliString> rows) {
    // Elimination on the symplectic part, carrying full Pauli products.
    if (rows.empty()) return;
    const std::size_t n = rows.front().size();
    std::size_t next = 0;
    for (std::size_t c = 0; c < 2 * n && next < rows.size(); ++c) {
      auto has = [&](const PauliString& p) { return c < n ? p.x().get(c) : p.z().get(c - n); };
      std::size_t found = rows.size();
      for (std::size_t r = next; r < rows.size(); ++r) {
        if (has(rows[r])) {
          found = r;
          break;
        }
      }
      if (found == rows.size()) continue;
      std::swap(rows[next], rows[found]);
      for (std::size_t r = next + 1; r < rows.size(); ++r) {
        if (has(rows[r])) rows[r] *= rows[next];
      }
      ++next;
    }
    for (std::size_t r = next; r < rows.size(); ++r) {
      if (rows[r].phase() != 0) throw InvalidStabilizer("-I is in the generated group");
    }
  }

  std::vector<PauliString> generators_;
  std::vector<std::string> qubit_parties_;
  std::vector<std::string> party_names_;
  std::size_t n_ = 0;
};

/// Generator matrix restricted to the x and z columns of qubits outside `r`.
inline BitMatrix outside_columns(const StabilizerTableau& t, PartySet r) {
  std::vector<std::size_t> cols;
  for (std::size_t q = 0; q < t.qubits(); ++q) {
    if (!((r >> t.qubit_party_index(q)) & 1u)) {
      cols.push_back(q);
      cols.push_back(t.qubits() + q);
    }
  }
  return t.symplectic_matrix().select_columns(cols);
}

/// log2 |G_R|: G_R is the subgroup of elements acting as identity outside R.
inline std::size_t subgroup_order(const StabilizerTableau& t, PartySet r) {
  return t.generator_count() - rank(outside_columns(t, r));
}

inline std::size_t subgroup_order(const StabilizerTableau& t, const std::vector<std::string>& parties) {
  return subgroup_order(t, t.party_set(parties));
}

/// Basis of exponent vectors (over the generators) spanning G_R.
inline BitMatrix subgroup_exponents(const StabilizerTableau& t, PartySet r) {
  return kernel_basis(outside_columns(t, r).transpose());
}

/// log2 |G_R| for every subset R of the parties, indexed by bitmask.
struct SubgroupTable {
  std::size_t party_count = 0;
  std::vector<int> log2_order;

  int operator[](PartySet s) const { return log2_order.at(s); }
  PartySet full() const { return (PartySet{1} << party_count) - 1; }
};

inline SubgroupTable subgroup_table(const StabilizerTableau& t) {
  SubgroupTable table;
  table.party_count = t.party_count();
  table.log2_order.resize(std::size_t{1} << table.party_count);
  for (PartySet s = 0; s < table.log2_order.size(); ++s) {
    table.log2_order[s] = static_cast<int>(subgroup_order(t, s));
  }
  return table;
}

/// log2 |G_{S1} . G_{S2} . ...|.
inline std::size_t product_subgroup_order(const StabilizerTableau& t, const std::vector<PartySet>& subsets) {
  BitMatrix all(t.generator_count());
  for (PartySet s : subsets) {
    BitMatrix basis = subgroup_exponents(t, s);
    for (const auto& row : basis.row_list()) all.push_row(row);
  }
  return rank(all);
}

/// Counts (p, m_AB, m_BC, m_AC) of GHZ states and Bell pairs extractable by
/// local Cliffords from a tripartite stabilizer state. Parties A, B, C are the
/// three sorted party labels.
struct GhzExtraction {
  int p = 0;
  int m_ab = 0;
  int m_bc = 0;
  int m_ac = 0;
  bool degenerate_partition = false;  // some party owns no qubits
};

inline GhzExtraction ghz_extraction_counts(const StabilizerTableau& t) {
  if (t.party_count() != 3) {
    throw std::invalid_argument("ghz_extraction_counts needs exactly three parties");
  }
  constexpr PartySet A = 1, B = 2, C = 4;
  const int g = static_cast<int>(t.generator_count());
  const int prod = static_cast<int>(product_subgroup_order(t, {A | B, B | C, A | C}));
  auto order = [&](PartySet s) { return static_cast<int>(subgroup_order(t, s)); };
  GhzExtraction out;
  out.degenerate_partition = t.has_empty_party();
  out.p = g - prod;
  auto pair = [&](PartySet x, PartySet y) {
    int twice = order(x | y) - order(x) - order(y) - out.p;
    if (twice < 0 || twice % 2 != 0) {
      throw std::logic_error("ghz_extraction_counts: non-integral Bell pair count");
    }
    return twice / 2;
  };
  if (out.p < 0) throw std::logic_error("ghz_extraction_counts: negative GHZ count");
  out.m_ab = pair(A, B);
  out.m_bc = pair(B, C);
  out.m_ac = pair(A, C);
  return out;
}

/// Row-reduced generator list: an upper block of rows with X support in
/// echelon form, then a lower block of pure Z rows.
struct CanonicalForm {
  std::vector<PauliString> rows;
  std::size_t x_rows = 0;
};

inline CanonicalForm canonical_form(std::vector<PauliString> rows) {
  CanonicalForm out;
  if (rows.empty()) return out;
  const std::size_t n = rows.front().size();
  auto eliminate = [&](std::size_t start, bool use_x) {
    std::size_t next = start;
    for (std::size_t c = 0; c < n && next < rows.size(); ++c) {
      auto has = [&](const PauliString& p) { return use_x ? p.x().get(c) : p.z().get(c); };
      std::size_t found = rows.size();
      for (std::size_t r = next; r < rows.size(); ++r) {
        if (has(rows[r])) {
          found = r;
          break;
        }
      }
      if (found == rows.size()) continue;
      std::swap(rows[next], rows[found]);
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (r != next && has(rows[r])) {
          rows[r] *= rows[next];
          if (!rows[r].is_hermitian()) throw InvalidStabilizer("canonical_form: anticommuting rows");
        }
      }
      ++next;
    }
    return next;
  };
  out.x_rows = eliminate(0, true);
  std::size_t used = eliminate(out.x_rows, false);
  for (std::size_t r = used; r < rows.size(); ++r) {
    if (rows[r].phase() != 0) throw InvalidStabilizer("-I is in the generated group");
  }
  rows.resize(used);
  out.rows = std::move(rows);
  return out;
}

inline CanonicalForm canonical_form(const StabilizerTableau& t) { return canonical_form(t.generators()); }

using StateVector = std::vector<std::complex<double>>;

/// Applies a Pauli string to a dense vector (qubit j is bit j of the index).
inline StateVector apply_pauli(const PauliString& p, const StateVector& psi) {
  const std::size_t n = p.size();
  std::uint64_t xm = 0, zm = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (p.x().get(j)) xm |= std::uint64_t{1} << j;
    if (p.z().get(j)) zm |= std::uint64_t{1} << j;
  }
  // sigma(x,z) = i^{xz} X^x Z^z.
  unsigned ph = (p.phase() + static_cast<unsigned>(std::popcount(xm & zm))) & 3u;
  static const std::complex<double> kI[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  StateVector out(psi.size());
  for (std::size_t b = 0; b < psi.size(); ++b) {
    double sign = (std::popcount(zm & b) & 1) ? -1.0 : 1.0;
    out[b ^ xm] += kI[ph] * sign * psi[b];
  }
  return out;
}

/// Dense state vector of a pure stabilizer state, fixed by every generator.
/// Global phase: the first nonzero amplitude is real and positive.
inline StateVector to_dense(const StabilizerTableau& t) {
  const std::size_t n = t.qubits();
  if (n > 20) throw std::invalid_argument("to_dense supports at most 20 qubits");
  if (!t.is_pure()) throw std::invalid_argument("to_dense needs a pure state");
  const std::size_t dim = std::size_t{1} << n;

  auto project_from = [&](std::size_t basis) {
    StateVector v(dim);
    v[basis] = 1.0;
    for (const auto& g : t.generators()) {
      StateVector gv = apply_pauli(g, v);
      for (std::size_t i = 0; i < dim; ++i) v[i] = 0.5 * (v[i] + gv[i]);
    }
    return v;
  };
  auto norm2 = [](const StateVector& v) {
    double s = 0;
    for (const auto& a : v) s += std::norm(a);
    return s;
  };

  // The support is the affine space cut out by the signed pure-Z rows.
  std::vector<std::size_t> probes;
  CanonicalForm cf = canonical_form(t);
  BitMatrix zpart(n);
  BitVector rhs(cf.rows.size() - cf.x_rows);
  for (std::size_t r = cf.x_rows; r < cf.rows.size(); ++r) {
    zpart.push_row(cf.rows[r].z());
    if (cf.rows[r].negative()) rhs.set(r - cf.x_rows);
  }
  if (auto b = solve(zpart, rhs)) {
    std::size_t idx = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (b->get(j)) idx |= std::size_t{1} << j;
    }
    probes.push_back(idx);
  }
  for (std::size_t i = 0; i < dim && probes.size() < 64; ++i) probes.push_back(i);

  for (std::size_t basis : probes) {
    StateVector v = project_from(basis);
    double nn = norm2(v);
    if (nn < 1e-12) continue;
    std::complex<double> first = 0;
    for (const auto& a : v) {
      if (std::abs(a) > 1e-9) {
        first = a;
        break;
      }
    }
    std::complex<double> scale = std::conj(first) / (std::abs(first) * std::sqrt(nn));
    for (auto& a : v) a *= scale;
    return v;
  }
  throw InvalidStabilizer("to_dense: projector annihilated every probed basis vector");
}

/// Tableau of the computational basis state |0...0>.
inline StabilizerTableau zero_state(std::vector<std::string> qubit_parties) {
  const std::size_t n = qubit_parties.size();
  std::vector<PauliString> gens;
  for (std::size_t q = 0; q < n; ++q) gens.push_back(single_pauli(n, q, 'Z'));
  return StabilizerTableau(std::move(gens), std::move(qubit_parties));
}

/// Conjugates every generator by a circuit: the tableau of U|psi>.
inline StabilizerTableau apply_circuit(const StabilizerTableau& t, const Circuit& c) {
  std::vector<PauliString> gens = t.generators();
  for (auto& g : gens) conjugate(g, c);
  return StabilizerTableau(std::move(gens), t.qubit_parties(), t.party_names());
}

}  // namespace multinv
