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
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "multinv/analytic.hpp"
#include "multinv/gf2.hpp"
#include "multinv/tableau.hpp"

namespace multinv {

/// State |N> = |N|^{-1/2} sum_{g in N} g |0...0> for a group N of X-type
/// strings. The full stabilizer group is generated by X^u (u in N) and Z^v
/// (v in the orthogonal complement of N).
class XStabilizerState {
 public:
  XStabilizerState() = default;
  XStabilizerState(const BitMatrix& generators, std::vector<std::string> qubit_parties,
                   const std::vector<std::string>& extra_parties = {})
      : parties_(std::move(qubit_parties)) {
    n_ = parties_.size();
    if (generators.cols() != n_) throw std::invalid_argument("XStabilizerState: generator width != qubit count");
    BitMatrix kept(n_);
    for (std::size_t r : independent_rows(generators)) kept.push_row(generators.row(r));
    dropped_ = generators.rows() - kept.rows();
    n_basis_ = std::move(kept);
    tilde_basis_ = orthogonal_complement(n_basis_);
    names_ = parties_;
    names_.insert(names_.end(), extra_parties.begin(), extra_parties.end());
    std::sort(names_.begin(), names_.end());
    names_.erase(std::unique(names_.begin(), names_.end()), names_.end());
  }

  std::size_t qubits() const { return n_; }
  const BitMatrix& n_generators() const { return n_basis_; }
  const BitMatrix& tilde_generators() const { return tilde_basis_; }
  /// Generators removed as linearly dependent at construction.
  std::size_t dropped_generators() const { return dropped_; }
  const std::vector<std::string>& qubit_parties() const { return parties_; }
  const std::vector<std::string>& party_names() const { return names_; }
  std::size_t party_count() const { return names_.size(); }

  std::size_t log2_n() const { return n_basis_.rows(); }

  /// log2 |N_R|: elements of N supported inside R.
  std::size_t n_subgroup_order(PartySet r) const { return restricted_order(n_basis_, r); }
  /// log2 |Ntilde_R|.
  std::size_t tilde_subgroup_order(PartySet r) const { return restricted_order(tilde_basis_, r); }

  std::vector<int> n_table() const { return table([&](PartySet r) { return n_subgroup_order(r); }); }
  std::vector<int> tilde_table() const { return table([&](PartySet r) { return tilde_subgroup_order(r); }); }

  /// Equivalent stabilizer tableau: X rows from N, Z rows from Ntilde.
  StabilizerTableau to_tableau() const {
    std::vector<PauliString> gens;
    for (const auto& row : n_basis_.row_list()) gens.emplace_back(row, BitVector(n_));
    for (const auto& row : tilde_basis_.row_list()) gens.emplace_back(BitVector(n_), row);
    return StabilizerTableau(std::move(gens), parties_, names_);
  }

 private:
  std::size_t party_of(std::size_t q) const {
    return static_cast<std::size_t>(std::lower_bound(names_.begin(), names_.end(), parties_[q]) - names_.begin());
  }

  std::size_t restricted_order(const BitMatrix& basis, PartySet r) const {
    std::vector<std::size_t> outside;
    for (std::size_t q = 0; q < n_; ++q) {
      if (!((r >> party_of(q)) & 1u)) outside.push_back(q);
    }
    return basis.rows() - rank(basis.select_columns(outside));
  }

  template <class F>
  std::vector<int> table(F f) const {
    std::vector<int> out(std::size_t{1} << names_.size());
    for (PartySet s = 0; s < out.size(); ++s) out[s] = static_cast<int>(f(s));
    return out;
  }

  std::vector<std::string> parties_;
  std::vector<std::string> names_;
  BitMatrix n_basis_;
  BitMatrix tilde_basis_;
  std::size_t n_ = 0;
  std::size_t dropped_ = 0;
};

/// log2 Z from the Coxeter counting formula with every |G_S| replaced by
/// |N_S| (unsquared).
inline Rational x_coxeter_invariant(const XStabilizerState& xs, const CoxeterSpec& spec) {
  return apply_subset_form(coxeter_exponents(spec), xs.n_table(), spec_party_map(xs.party_names(), spec));
}

/// Same with Ntilde in place of N.
inline Rational x_coxeter_invariant_tilde(const XStabilizerState& xs, const CoxeterSpec& spec) {
  return apply_subset_form(coxeter_exponents(spec), xs.tilde_table(), spec_party_map(xs.party_names(), spec));
}

/// Lattice state together with each qubit's position (edge midpoints in
/// units of half a lattice spacing) for partition tooling.
struct LatticeState {
  XStabilizerState state;
  std::vector<std::vector<int>> coordinates;
  std::size_t L = 0;
};

/// Assigns each qubit to one of q slabs along the first coordinate.
inline std::vector<std::string> slab_parties(const std::vector<std::vector<int>>& coords, std::size_t L, std::size_t q) {
  std::vector<std::string> labels = default_party_labels(q);
  std::vector<std::string> out;
  for (const auto& c : coords) {
    std::size_t slab = static_cast<std::size_t>(c[0]) * q / (2 * L);
    out.push_back(labels[std::min(slab, q - 1)]);
  }
  return out;
}

/// Toric code on an L x L periodic square lattice. Edge (x, y, h) has index
/// 2 (y L + x) and edge (x, y, v) has index 2 (y L + x) + 1; the star at
/// vertex (x, y) covers h(x,y), h(x-1,y), v(x,y), v(x,y-1). The last star is
/// dropped as the product of the others.
inline LatticeState build_toric_code(std::size_t L, std::size_t parties_q = 3) {
  if (L < 2) throw std::invalid_argument("build_toric_code needs L >= 2");
  const std::size_t n = 2 * L * L;
  auto h = [L](std::size_t x, std::size_t y) { return 2 * ((y % L) * L + (x % L)); };
  auto v = [L](std::size_t x, std::size_t y) { return 2 * ((y % L) * L + (x % L)) + 1; };
  BitMatrix stars(n);
  for (std::size_t y = 0; y < L; ++y) {
    for (std::size_t x = 0; x < L; ++x) {
      BitVector s(n);
      s.flip(h(x, y));
      s.flip(h(x + L - 1, y));
      s.flip(v(x, y));
      s.flip(v(x, y + L - 1));
      stars.push_row(std::move(s));
    }
  }
  LatticeState out;
  out.L = L;
  out.coordinates.resize(n);
  for (std::size_t y = 0; y < L; ++y) {
    for (std::size_t x = 0; x < L; ++x) {
      out.coordinates[h(x, y)] = {static_cast<int>(2 * x + 1), static_cast<int>(2 * y)};
      out.coordinates[v(x, y)] = {static_cast<int>(2 * x), static_cast<int>(2 * y + 1)};
    }
  }
  BitMatrix gens(n);
  for (std::size_t r = 0; r + 1 < stars.rows(); ++r) gens.push_row(stars.row(r));
  out.state = XStabilizerState(gens, slab_parties(out.coordinates, L, parties_q));
  return out;
}

/// All L^2 star vectors, including the dependent one.
inline BitMatrix toric_code_stars(std::size_t L) {
  LatticeState st = build_toric_code(L, 1);
  BitMatrix all = st.state.n_generators();
  BitVector last(all.cols());
  for (const auto& r : all.row_list()) last ^= r;
  all.push_row(last);
  return all;
}

/// Cube operators of the X-cube model on an L x L x L periodic lattice. Edge
/// (site, dir) has index 3 site + dir with site = (z L + y) L + x.
inline BitMatrix x_cube_operators(std::size_t L) {
  const std::size_t n = 3 * L * L * L;
  auto edge = [L](std::size_t x, std::size_t y, std::size_t z, std::size_t dir) {
    return 3 * (((z % L) * L + (y % L)) * L + (x % L)) + dir;
  };
  BitMatrix cubes(n);
  for (std::size_t z = 0; z < L; ++z) {
    for (std::size_t y = 0; y < L; ++y) {
      for (std::size_t x = 0; x < L; ++x) {
        BitVector c(n);
        for (std::size_t a = 0; a < 2; ++a) {
          for (std::size_t b = 0; b < 2; ++b) {
            c.flip(edge(x, y + a, z + b, 0));
            c.flip(edge(x + a, y, z + b, 1));
            c.flip(edge(x + a, y + b, z, 2));
          }
        }
        cubes.push_row(std::move(c));
      }
    }
  }
  return cubes;
}

/// X-cube ground state; dependent cube operators are dropped (later rows
/// first, deterministic).
inline LatticeState build_x_cube(std::size_t L, std::size_t parties_q = 3) {
  if (L < 2) throw std::invalid_argument("build_x_cube needs L >= 2");
  const std::size_t n = 3 * L * L * L;
  LatticeState out;
  out.L = L;
  out.coordinates.resize(n);
  for (std::size_t z = 0; z < L; ++z) {
    for (std::size_t y = 0; y < L; ++y) {
      for (std::size_t x = 0; x < L; ++x) {
        std::size_t site = (z * L + y) * L + x;
        std::vector<int> base = {static_cast<int>(2 * x), static_cast<int>(2 * y), static_cast<int>(2 * z)};
        for (std::size_t d = 0; d < 3; ++d) {
          auto c = base;
          c[d] += 1;
          out.coordinates[3 * site + d] = c;
        }
      }
    }
  }
  out.state = XStabilizerState(x_cube_operators(L), slab_parties(out.coordinates, L, parties_q));
  return out;
}

}  // namespace multinv
