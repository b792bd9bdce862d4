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
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace multinv {

/// Bijection on {0, ..., n-1}; `image(i)` is where i is sent.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::size_t n) : map_(n) { std::iota(map_.begin(), map_.end(), 0u); }
  explicit Permutation(std::vector<std::uint32_t> images) : map_(std::move(images)) {
    std::vector<bool> seen(map_.size(), false);
    for (auto v : map_) {
      if (v >= map_.size() || seen[v]) throw std::invalid_argument("Permutation: not a bijection");
      seen[v] = true;
    }
  }

  static Permutation identity(std::size_t n) { return Permutation(n); }

  /// Builds from disjoint cycles; unlisted points are fixed.
  static Permutation from_cycles(std::size_t n, const std::vector<std::vector<std::uint32_t>>& cycles) {
    std::vector<std::uint32_t> img(n);
    std::iota(img.begin(), img.end(), 0u);
    std::vector<bool> used(n, false);
    for (const auto& c : cycles) {
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] >= n) throw std::invalid_argument("cycle entry out of range");
        if (used[c[i]]) throw std::invalid_argument("cycles are not disjoint");
        used[c[i]] = true;
        img[c[i]] = c[(i + 1) % c.size()];
      }
    }
    return Permutation(std::move(img));
  }

  std::size_t size() const { return map_.size(); }
  std::uint32_t operator()(std::size_t i) const { return map_[i]; }
  const std::vector<std::uint32_t>& images() const { return map_; }

  Permutation inverse() const {
    std::vector<std::uint32_t> inv(map_.size());
    for (std::size_t i = 0; i < map_.size(); ++i) inv[map_[i]] = static_cast<std::uint32_t>(i);
    return Permutation(std::move(inv));
  }

  /// Composition (*this after other): i -> this(other(i)).
  Permutation operator*(const Permutation& other) const {
    if (other.size() != size()) throw std::invalid_argument("Permutation size mismatch");
    std::vector<std::uint32_t> out(size());
    for (std::size_t i = 0; i < size(); ++i) out[i] = map_[other.map_[i]];
    return Permutation(std::move(out));
  }

  bool operator==(const Permutation& o) const { return map_ == o.map_; }
  bool is_identity() const {
    for (std::size_t i = 0; i < map_.size(); ++i) {
      if (map_[i] != i) return false;
    }
    return true;
  }

  std::size_t cycle_count() const {
    std::vector<bool> seen(size(), false);
    std::size_t count = 0;
    for (std::size_t i = 0; i < size(); ++i) {
      if (seen[i]) continue;
      ++count;
      for (std::size_t j = i; !seen[j]; j = map_[j]) seen[j] = true;
    }
    return count;
  }

  /// Cycle notation including fixed points, e.g. "(0 1 2)(3)".
  std::string to_string() const {
    std::ostringstream os;
    std::vector<bool> seen(size(), false);
    for (std::size_t i = 0; i < size(); ++i) {
      if (seen[i]) continue;
      os << '(';
      bool first = true;
      for (std::size_t j = i; !seen[j]; j = map_[j]) {
        seen[j] = true;
        os << (first ? "" : " ") << j;
        first = false;
      }
      os << ')';
    }
    return os.str();
  }

 private:
  std::vector<std::uint32_t> map_;
};

/// Parses cycle notation "(0 1 2)(3)" over n points; an empty string or "()"
/// is the identity.
inline Permutation parse_cycles(const std::string& text, std::size_t n) {
  std::vector<std::vector<std::uint32_t>> cycles;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == ',')) ++i;
  };
  skip();
  while (i < text.size()) {
    if (text[i] != '(') throw std::invalid_argument("expected '(' in cycle notation: " + text);
    ++i;
    std::vector<std::uint32_t> cyc;
    while (true) {
      skip();
      if (i >= text.size()) throw std::invalid_argument("unterminated cycle: " + text);
      if (text[i] == ')') {
        ++i;
        break;
      }
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j == i) throw std::invalid_argument("bad cycle entry in: " + text);
      cyc.push_back(static_cast<std::uint32_t>(std::stoul(text.substr(i, j - i))));
      i = j;
    }
    if (!cyc.empty()) cycles.push_back(std::move(cyc));
    skip();
  }
  return Permutation::from_cycles(n, cycles);
}

/// One permutation of the replicas per party. Parties are kept sorted by label.
class PermutationTuple {
 public:
  PermutationTuple() = default;
  PermutationTuple(std::vector<std::string> parties, std::vector<Permutation> sigma) {
    if (parties.size() != sigma.size()) throw std::invalid_argument("PermutationTuple: size mismatch");
    if (parties.empty()) throw std::invalid_argument("PermutationTuple: no parties");
    std::vector<std::size_t> order(parties.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return parties[a] < parties[b]; });
    for (auto k : order) {
      if (!parties_.empty() && parties_.back() == parties[k]) {
        throw std::invalid_argument("PermutationTuple: duplicate party " + parties[k]);
      }
      parties_.push_back(parties[k]);
      sigma_.push_back(sigma[k]);
    }
    for (const auto& s : sigma_) {
      if (s.size() != sigma_.front().size()) throw std::invalid_argument("PermutationTuple: replica counts differ");
    }
    if (sigma_.front().size() == 0) throw std::invalid_argument("PermutationTuple: zero replicas");
  }

  std::size_t party_count() const { return parties_.size(); }
  std::size_t replicas() const { return sigma_.front().size(); }
  const std::vector<std::string>& parties() const { return parties_; }
  const std::vector<Permutation>& sigmas() const { return sigma_; }
  const Permutation& sigma(std::size_t i) const { return sigma_[i]; }

  bool has_party(const std::string& p) const { return std::binary_search(parties_.begin(), parties_.end(), p); }
  const Permutation& sigma(const std::string& p) const {
    auto it = std::lower_bound(parties_.begin(), parties_.end(), p);
    if (it == parties_.end() || *it != p) throw std::invalid_argument("PermutationTuple: no party " + p);
    return sigma_[static_cast<std::size_t>(it - parties_.begin())];
  }

  /// (g s_1 h, ..., g s_q h): leaves every multi-invariant unchanged.
  PermutationTuple relabeled(const Permutation& g, const Permutation& h) const {
    std::vector<Permutation> out;
    for (const auto& s : sigma_) out.push_back(g * s * h);
    return PermutationTuple(parties_, std::move(out));
  }

  /// Relabels so the last party's permutation is the identity.
  PermutationTuple gauge_fixed() const {
    return relabeled(sigma_.back().inverse(), Permutation::identity(replicas()));
  }

  bool operator==(const PermutationTuple& o) const { return parties_ == o.parties_ && sigma_ == o.sigma_; }

 private:
  std::vector<std::string> parties_;
  std::vector<Permutation> sigma_;
};

/// Default party labels "A", "B", ... ("P26", ... past Z).
inline std::vector<std::string> default_party_labels(std::size_t q) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < q; ++i) {
    out.push_back(i < 26 ? std::string(1, static_cast<char>('A' + i)) : "P" + std::to_string(i));
  }
  return out;
}

/// Rényi multi-entropy tuple: replicas are Z_n^{q-1}, party a < q-1 shifts
/// coordinate a by one, the last party is the identity.
inline PermutationTuple multi_entropy_tuple(std::size_t n, std::size_t q,
                                            std::vector<std::string> parties = {}) {
  if (n < 1 || q < 2) throw std::invalid_argument("multi_entropy_tuple needs n >= 1 and q >= 2");
  if (parties.empty()) parties = default_party_labels(q);
  if (parties.size() != q) throw std::invalid_argument("multi_entropy_tuple: party label count");
  std::size_t reps = 1;
  for (std::size_t i = 0; i + 1 < q; ++i) {
    reps *= n;
    if (reps > (std::size_t{1} << 24)) throw std::invalid_argument("multi_entropy_tuple: too many replicas");
  }
  std::vector<Permutation> sig;
  std::size_t stride = 1;
  for (std::size_t a = 0; a < q; ++a) {
    std::vector<std::uint32_t> img(reps);
    for (std::size_t r = 0; r < reps; ++r) {
      if (a + 1 == q) {
        img[r] = static_cast<std::uint32_t>(r);
      } else {
        std::size_t digit = (r / stride) % n;
        img[r] = static_cast<std::uint32_t>(r - digit * stride + ((digit + 1) % n) * stride);
      }
    }
    sig.emplace_back(std::move(img));
    stride *= n;
  }
  return PermutationTuple(std::move(parties), std::move(sig));
}

/// Tuple computing Tr(rho_A^n) for two parties: (n-cycle, identity).
inline PermutationTuple renyi_tuple(std::size_t n, std::vector<std::string> parties = {"A", "B"}) {
  return multi_entropy_tuple(n, 2, std::move(parties));
}

/// Tripartite tuple (id, 3-cycle, inverse 3-cycle) on three replicas.
inline PermutationTuple kempe_tuple(std::vector<std::string> parties = {"A", "B", "C"}) {
  return PermutationTuple(std::move(parties), {Permutation::identity(3), Permutation({1, 2, 0}),
                                               Permutation({2, 0, 1})});
}

inline Permutation random_permutation(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::uint32_t> img(n);
  std::iota(img.begin(), img.end(), 0u);
  std::shuffle(img.begin(), img.end(), rng);
  return Permutation(std::move(img));
}

inline PermutationTuple random_tuple(std::size_t q, std::size_t n_rep, std::mt19937_64& rng,
                                     std::vector<std::string> parties = {}) {
  if (parties.empty()) parties = default_party_labels(q);
  std::vector<Permutation> sig;
  for (std::size_t a = 0; a < q; ++a) sig.push_back(random_permutation(n_rep, rng));
  return PermutationTuple(std::move(parties), std::move(sig)).gauge_fixed();
}

/// Surface data of a tripartite invariant: a triangulation with N = 2 n_rep
/// triangles glued along colored edges.
struct Topology {
  std::size_t vertices = 0;   // N
  std::size_t faces = 0;      // F, summed pairwise cycle counts
  long long euler = 0;        // chi = F - N/2
  bool orientable = true;     // false when chi would be odd
  long long genus = 0;        // (2 - chi) / 2 over the whole surface
  std::size_t components = 0;
  std::vector<long long> component_genus;
};

inline std::size_t components_of(const std::vector<Permutation>& sigmas) {
  // Replica i is linked to i' when some sigma_a^{-1} sigma_b maps i to i'.
  if (sigmas.empty()) return 0;
  const std::size_t n = sigmas.front().size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t a = 1; a < sigmas.size(); ++a) {
    Permutation p = sigmas[0].inverse() * sigmas[a];
    for (std::size_t i = 0; i < n; ++i) parent[find(i)] = find(p(i));
  }
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) count += (find(i) == i);
  return count;
}

inline Topology tripartite_topology(const PermutationTuple& t) {
  if (t.party_count() != 3) throw std::invalid_argument("tripartite_topology needs exactly three parties");
  const auto& s = t.sigmas();
  Topology out;
  out.vertices = 2 * t.replicas();
  auto faces = [](const Permutation& x, const Permutation& y) { return (x * y.inverse()).cycle_count(); };
  out.faces = faces(s[0], s[1]) + faces(s[1], s[2]) + faces(s[2], s[0]);
  out.euler = static_cast<long long>(out.faces) - static_cast<long long>(t.replicas());
  out.orientable = (out.euler % 2 == 0);
  out.genus = out.orientable ? (2 - out.euler) / 2 : 0;

  // Per component: restrict to the replicas of each connected piece.
  const std::size_t n = t.replicas();
  std::vector<std::size_t> label(n, SIZE_MAX);
  std::size_t comp = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (label[i] != SIZE_MAX) continue;
    std::vector<std::size_t> stack{i};
    label[i] = comp;
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      for (std::size_t a = 0; a < 3; ++a) {
        for (std::size_t b = 0; b < 3; ++b) {
          std::size_t w = s[b].inverse()(s[a](v));
          if (label[w] == SIZE_MAX) {
            label[w] = comp;
            stack.push_back(w);
          }
        }
      }
    }
    ++comp;
  }
  out.components = comp;
  for (std::size_t c = 0; c < comp; ++c) {
    long long reps = 0, f = 0;
    for (std::size_t i = 0; i < n; ++i) reps += (label[i] == c);
    for (auto [x, y] : {std::pair{0, 1}, std::pair{1, 2}, std::pair{2, 0}}) {
      Permutation p = s[x] * s[y].inverse();
      // cycles of p live on bra indices; a bra belongs to the component of s_y^{-1}(bra).
      std::vector<bool> seen(n, false);
      Permutation yi = s[y].inverse();
      for (std::size_t j = 0; j < n; ++j) {
        if (seen[j]) continue;
        for (std::size_t k = j; !seen[k]; k = p(k)) seen[k] = true;
        if (label[yi(j)] == c) ++f;
      }
    }
    long long chi = f - reps;
    out.component_genus.push_back(chi % 2 == 0 ? (2 - chi) / 2 : -1);
  }
  return out;
}

}  // namespace multinv
