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
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "multinv/permutation.hpp"

namespace multinv {

/// Coxeter matrix over q generators, one per party. m(i,i) = 1 and
/// m(i,j) = m(j,i) >= 2.
class CoxeterSpec {
 public:
  CoxeterSpec() = default;
  CoxeterSpec(std::vector<std::vector<int>> m, std::vector<std::string> parties = {})
      : m_(std::move(m)), parties_(std::move(parties)) {
    const std::size_t q = m_.size();
    if (q < 1) throw std::invalid_argument("CoxeterSpec: no generators");
    if (parties_.empty()) parties_ = default_party_labels(q);
    if (parties_.size() != q) throw std::invalid_argument("CoxeterSpec: party label count");
    for (std::size_t i = 0; i < q; ++i) {
      if (m_[i].size() != q) throw std::invalid_argument("CoxeterSpec: matrix is not square");
      if (m_[i][i] != 1) throw std::invalid_argument("CoxeterSpec: diagonal entries must be 1");
      for (std::size_t j = 0; j < q; ++j) {
        if (i != j && m_[i][j] < 2) throw std::invalid_argument("CoxeterSpec: off-diagonal entries must be >= 2");
        if (m_[i][j] != m_[j][i]) throw std::invalid_argument("CoxeterSpec: matrix is not symmetric");
      }
    }
  }

  /// From the upper triangle in row-major order: m12, m13, ..., m1q, m23, ...
  /// For three parties this is (m_AB, m_AC, m_BC).
  static CoxeterSpec from_upper(const std::vector<int>& upper, std::vector<std::string> parties = {}) {
    std::size_t q = 1;
    while (q * (q - 1) / 2 < upper.size()) ++q;
    if (q * (q - 1) / 2 != upper.size()) {
      throw std::invalid_argument("CoxeterSpec: entry count is not q(q-1)/2 for any q");
    }
    if (upper.empty() && !parties.empty()) q = parties.size();
    std::vector<std::vector<int>> m(q, std::vector<int>(q, 1));
    std::size_t k = 0;
    for (std::size_t i = 0; i < q; ++i) {
      for (std::size_t j = i + 1; j < q; ++j) m[i][j] = m[j][i] = upper[k++];
    }
    return CoxeterSpec(std::move(m), std::move(parties));
  }

  /// Tripartite spec with the pair orders given by party pair.
  static CoxeterSpec tripartite(int m_ab, int m_bc, int m_ac) { return from_upper({m_ab, m_ac, m_bc}); }

  /// All m_ij = 2: the n = 2 Renyi multi-entropy on q parties.
  static CoxeterSpec all_commuting(std::size_t q) {
    return from_upper(std::vector<int>(q * (q - 1) / 2, 2));
  }

  std::size_t size() const { return m_.size(); }
  int m(std::size_t i, std::size_t j) const { return m_[i][j]; }
  const std::vector<std::vector<int>>& matrix() const { return m_; }
  const std::vector<std::string>& parties() const { return parties_; }

  /// Sub-spec on the generators in `subset` (bitmask).
  CoxeterSpec restricted(std::uint32_t subset) const {
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < size(); ++i) {
      if ((subset >> i) & 1u) keep.push_back(i);
    }
    std::vector<std::vector<int>> m(keep.size(), std::vector<int>(keep.size()));
    std::vector<std::string> p;
    for (std::size_t a = 0; a < keep.size(); ++a) {
      p.push_back(parties_[keep[a]]);
      for (std::size_t b = 0; b < keep.size(); ++b) m[a][b] = m_[keep[a]][keep[b]];
    }
    return CoxeterSpec(std::move(m), std::move(p));
  }

  /// The bilinear form B_ij = -cos(pi / m_ij) is positive definite exactly
  /// for finite Coxeter groups.
  bool is_finite() const {
    const std::size_t q = size();
    std::vector<std::vector<double>> b(q, std::vector<double>(q));
    for (std::size_t i = 0; i < q; ++i) {
      for (std::size_t j = 0; j < q; ++j) b[i][j] = -std::cos(M_PI / m_[i][j]);
    }
    // Cholesky: fails iff some leading minor is not positive.
    for (std::size_t j = 0; j < q; ++j) {
      double d = b[j][j];
      for (std::size_t k = 0; k < j; ++k) d -= b[j][k] * b[j][k];
      if (d <= 1e-12) return false;
      d = std::sqrt(d);
      b[j][j] = d;
      for (std::size_t i = j + 1; i < q; ++i) {
        double s = b[i][j];
        for (std::size_t k = 0; k < j; ++k) s -= b[i][k] * b[j][k];
        b[i][j] = s / d;
      }
    }
    return true;
  }

 private:
  std::vector<std::vector<int>> m_;
  std::vector<std::string> parties_;
};

class GroupTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Cayley graph of a finite Coxeter group. Elements are numbered in BFS
/// order from the identity (ties by generator index); left[i][g] is the
/// index of r_i g.
struct CayleyGraph {
  std::size_t order = 0;
  std::vector<std::vector<std::uint32_t>> left;
  std::vector<std::uint8_t> parity;  // word length mod 2
  std::vector<std::uint32_t> length;
};

/// Enumerates the group generated by reflections r_i in the geometric
/// representation. Throws GroupTooLarge past `max_elements`.
inline CayleyGraph generate_coxeter(const CoxeterSpec& spec, std::size_t max_elements = 200000,
                                    bool require_finite = true) {
  if (require_finite && !spec.is_finite()) throw GroupTooLarge("Coxeter spec is not of finite type");
  const std::size_t q = spec.size();
  std::vector<std::vector<double>> b(q, std::vector<double>(q));
  for (std::size_t i = 0; i < q; ++i) {
    for (std::size_t j = 0; j < q; ++j) b[i][j] = -std::cos(M_PI / spec.m(i, j));
  }
  using Mat = std::vector<double>;  // q x q, row-major
  auto key = [](const Mat& m) {
    std::vector<long long> k(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) k[i] = std::llround(m[i] * 1e9);
    return k;
  };
  // r_i g: row i of g changes, v -> v - 2 B(e_i, v) e_i applied to each column.
  auto reflect = [&](std::size_t i, const Mat& g) {
    Mat out = g;
    for (std::size_t col = 0; col < q; ++col) {
      double s = 0;
      for (std::size_t k = 0; k < q; ++k) s += b[i][k] * g[k * q + col];
      out[i * q + col] -= 2 * s;
    }
    return out;
  };

  CayleyGraph cg;
  std::map<std::vector<long long>, std::uint32_t> index;
  std::vector<Mat> elems;
  Mat id(q * q, 0.0);
  for (std::size_t i = 0; i < q; ++i) id[i * q + i] = 1;
  index[key(id)] = 0;
  elems.push_back(id);
  cg.length.push_back(0);
  cg.left.assign(q, {});
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (std::size_t i = 0; i < q; ++i) {
      Mat nxt = reflect(i, elems[head]);
      auto k = key(nxt);
      auto it = index.find(k);
      std::uint32_t idx;
      if (it == index.end()) {
        if (elems.size() >= max_elements) {
          throw GroupTooLarge("Coxeter group exceeds " + std::to_string(max_elements) + " elements");
        }
        idx = static_cast<std::uint32_t>(elems.size());
        index.emplace(std::move(k), idx);
        elems.push_back(std::move(nxt));
        cg.length.push_back(cg.length[head] + 1);
      } else {
        idx = it->second;
      }
      if (cg.left[i].size() <= head) cg.left[i].resize(head + 1);
      cg.left[i][head] = idx;
    }
  }
  cg.order = elems.size();
  for (auto& row : cg.left) row.resize(cg.order);
  cg.parity.resize(cg.order);
  for (std::size_t g = 0; g < cg.order; ++g) cg.parity[g] = cg.length[g] & 1u;
  for (std::size_t i = 0; i < q; ++i) {
    for (std::size_t g = 0; g < cg.order; ++g) {
      if (cg.left[i][cg.left[i][g]] != g || cg.parity[cg.left[i][g]] == cg.parity[g]) {
        throw std::logic_error("generate_coxeter: generator is not a parity-flipping involution");
      }
    }
  }
  return cg;
}

/// Number of connected components keeping only the colors in `subset`.
inline std::size_t colored_components(const CayleyGraph& cg, std::uint32_t subset) {
  std::vector<std::uint32_t> parent(cg.order);
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t comps = cg.order;
  for (std::size_t i = 0; i < cg.left.size(); ++i) {
    if (!((subset >> i) & 1u)) continue;
    for (std::uint32_t g = 0; g < cg.order; ++g) {
      auto a = find(g), b = find(cg.left[i][g]);
      if (a != b) {
        parent[a] = b;
        --comps;
      }
    }
  }
  return comps;
}

/// n_S for every subset S of colors (bitmask index); entry 0 is |K| and the
/// full set gives 1. `replicas` is |K| / 2.
struct SubgraphCounts {
  std::size_t order = 0;
  std::size_t replicas = 0;
  std::vector<std::size_t> n;
};

inline SubgraphCounts subgraph_counts(const CayleyGraph& cg, const CoxeterSpec& spec) {
  SubgraphCounts sc;
  sc.order = cg.order;
  sc.replicas = cg.order / 2;
  sc.n.resize(std::size_t{1} << spec.size());
  for (std::uint32_t s = 0; s < sc.n.size(); ++s) sc.n[s] = colored_components(cg, s);
  return sc;
}

/// Order of the subgroup generated by the reflections in `subset`.
inline std::size_t parabolic_order(const CoxeterSpec& spec, std::uint32_t subset) {
  if (subset == 0) return 1;
  return generate_coxeter(spec.restricted(subset)).order;
}

/// Kets are the even elements and bras the odd ones, each numbered in BFS
/// order; sigma_i sends the ket of g to the bra of r_i g. Gauge fixed so the
/// last party is the identity.
inline PermutationTuple cayley_to_tuple(const CayleyGraph& cg, const std::vector<std::string>& parties) {
  if (parties.size() != cg.left.size()) throw std::invalid_argument("cayley_to_tuple: party count");
  std::vector<std::uint32_t> slot(cg.order);
  std::uint32_t even = 0, odd = 0;
  for (std::size_t g = 0; g < cg.order; ++g) slot[g] = cg.parity[g] ? odd++ : even++;
  if (even != odd) throw std::logic_error("cayley_to_tuple: unbalanced parity classes");
  std::vector<Permutation> sig;
  for (const auto& gen : cg.left) {
    std::vector<std::uint32_t> img(even);
    for (std::size_t g = 0; g < cg.order; ++g) {
      if (!cg.parity[g]) img[slot[g]] = slot[gen[g]];
    }
    sig.emplace_back(std::move(img));
  }
  return PermutationTuple(parties, std::move(sig)).gauge_fixed();
}

inline PermutationTuple coxeter_tuple(const CoxeterSpec& spec) {
  return cayley_to_tuple(generate_coxeter(spec), spec.parties());
}

}  // namespace multinv
