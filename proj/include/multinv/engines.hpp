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

#include <chrono>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "multinv/clifford.hpp"
#include "multinv/convert.hpp"
#include "multinv/dyadic.hpp"
#include "multinv/graph.hpp"
#include "multinv/permutation.hpp"
#include "multinv/tableau.hpp"

namespace multinv {

// ---------------------------------------------------------------------------
// Single-qubit data over DyadicOmega.

inline Mat2 local_unitary_matrix(LocalUnitary u) {
  const DyadicOmega h = DyadicOmega::inv_sqrt2();
  const DyadicOmega w = DyadicOmega::omega_power(1), wi = DyadicOmega::omega_power(-1);
  const DyadicOmega z = DyadicOmega::zero(), one = DyadicOmega::one();
  Mat2 m;
  switch (u) {
    case LocalUnitary::Sz: m.m = {one, z, z, -one}; break;
    case LocalUnitary::SqrtMinusIZ: m.m = {wi, z, z, w}; break;
    case LocalUnitary::SqrtPlusIZ: m.m = {w, z, z, wi}; break;
    case LocalUnitary::SqrtMinusIY: m.m = {h, -h, h, h}; break;
    case LocalUnitary::SqrtPlusIY: m.m = {h, h, -h, h}; break;
  }
  return m;
}

/// Eigenvector of sigma_basis with eigenvalue `sign`: |x+-> = (1, +-1)/sqrt2,
/// |y+-> = (1, +-i)/sqrt2, |z+> = |0>, |z-> = |1>.
inline Vec2 pauli_eigenvector(PauliBasis b, int sign) {
  const DyadicOmega h = DyadicOmega::inv_sqrt2();
  switch (b) {
    case PauliBasis::X: return {h, sign > 0 ? h : -h};
    case PauliBasis::Y: return {h, (sign > 0 ? h : -h) * DyadicOmega::i()};
    case PauliBasis::Z:
      return sign > 0 ? Vec2{DyadicOmega::one(), DyadicOmega::zero()} : Vec2{DyadicOmega::zero(), DyadicOmega::one()};
  }
  throw std::logic_error("pauli_eigenvector");
}

struct ProjectorLabel {
  PauliBasis basis = PauliBasis::X;
  int sign = 1;
  bool operator==(const ProjectorLabel&) const = default;
};

/// Commutation rule P_{j,s} U = U P_{j',s'}: returns (j', s') for an
/// elementary byproduct U. Total over the 5 x 3 x 2 inputs.
inline ProjectorLabel commute_projector(ProjectorLabel p, LocalUnitary u) {
  using B = PauliBasis;
  // Rule for sign +; a - input flips the output sign.
  ProjectorLabel out;
  switch (u) {
    case LocalUnitary::Sz:
      out = p.basis == B::Z ? ProjectorLabel{B::Z, 1} : ProjectorLabel{p.basis, -1};
      break;
    case LocalUnitary::SqrtMinusIZ:
      out = p.basis == B::X ? ProjectorLabel{B::Y, -1} : (p.basis == B::Y ? ProjectorLabel{B::X, 1} : ProjectorLabel{B::Z, 1});
      break;
    case LocalUnitary::SqrtPlusIZ:
      out = p.basis == B::X ? ProjectorLabel{B::Y, 1} : (p.basis == B::Y ? ProjectorLabel{B::X, -1} : ProjectorLabel{B::Z, 1});
      break;
    case LocalUnitary::SqrtPlusIY:
      out = p.basis == B::X ? ProjectorLabel{B::Z, -1} : (p.basis == B::Y ? ProjectorLabel{B::Y, 1} : ProjectorLabel{B::X, 1});
      break;
    case LocalUnitary::SqrtMinusIY:
      out = p.basis == B::X ? ProjectorLabel{B::Z, 1} : (p.basis == B::Y ? ProjectorLabel{B::Y, 1} : ProjectorLabel{B::X, -1});
      break;
  }
  out.sign *= p.sign;
  return out;
}

/// Checks every commutation rule against U^dag P U on exact 2x2 matrices.
/// Returns the number of rules checked; throws on the first mismatch.
inline int validate_commutation_rules() {
  int checked = 0;
  for (LocalUnitary u : {LocalUnitary::Sz, LocalUnitary::SqrtMinusIZ, LocalUnitary::SqrtPlusIZ,
                         LocalUnitary::SqrtMinusIY, LocalUnitary::SqrtPlusIY}) {
    Mat2 m = local_unitary_matrix(u);
    for (PauliBasis b : {PauliBasis::X, PauliBasis::Y, PauliBasis::Z}) {
      for (int s : {1, -1}) {
        Vec2 v = pauli_eigenvector(b, s);
        ProjectorLabel r = commute_projector({b, s}, u);
        Vec2 w = pauli_eigenvector(r.basis, r.sign);
        if (!(m.adjoint() * outer(v, v) * m == outer(w, w))) {
          throw std::logic_error(std::string("commutation rule mismatch for ") + local_unitary_name(u));
        }
        ++checked;
      }
    }
  }
  return checked;
}

/// The byproducts generate a finite group (single-qubit Cliffords times
/// eighth roots of unity). The projector engine tracks each pending operator
/// as an index into this table instead of multiplying 2x2 matrices.
/// w^phase 2^{-halves/2}, or zero.
struct PhaseMonomial {
  bool zero = false;
  int phase = 0;
  std::int64_t halves = 0;
};

inline DyadicOmega from_monomial(const PhaseMonomial& m) {
  if (m.zero) return DyadicOmega::zero();
  DyadicOmega v = DyadicOmega::omega_power(m.phase);
  const DyadicOmega step = m.halves >= 0 ? DyadicOmega::inv_sqrt2() : DyadicOmega::sqrt2();
  for (std::int64_t i = 0; i < (m.halves >= 0 ? m.halves : -m.halves); ++i) v = v * step;
  return v;
}

inline PhaseMonomial to_monomial(const DyadicOmega& v) {
  if (v.is_zero()) return {true, 0, 0};
  auto mag = v.magnitude_log2();
  if (!mag || (*mag * 2).denominator() != 1) throw std::logic_error("to_monomial: not a power of sqrt2");
  const std::int64_t halves = -(*mag * 2).numerator();
  for (int p = 0; p < 8; ++p) {
    if (from_monomial({false, p, halves}) == v) return {false, p, halves};
  }
  throw std::logic_error("to_monomial: phase is not an eighth root of unity");
}

inline std::size_t label_index(PauliBasis b, int sign) { return 2 * static_cast<std::size_t>(b) + (sign < 0 ? 1 : 0); }

struct ByproductGroup {
  static constexpr std::size_t kGenerators = 5;
  std::vector<Mat2> elements;  // elements[0] is the identity
  std::vector<std::array<std::uint16_t, kGenerators>> right;  // g * U
  std::vector<Vec2> plus_bra;  // M^dag |+>
  /// <+| M |j,s> / sqrt2 for a vertex that is measured, by label_index.
  std::vector<std::array<PhaseMonomial, 6>> measured;
  /// <+| M |+> for a vertex left isolated.
  std::vector<PhaseMonomial> isolated;
};

inline const ByproductGroup& byproduct_group() {
  static const ByproductGroup group = [] {
    const LocalUnitary gens[ByproductGroup::kGenerators] = {LocalUnitary::Sz, LocalUnitary::SqrtMinusIZ,
                                                            LocalUnitary::SqrtPlusIZ, LocalUnitary::SqrtMinusIY,
                                                            LocalUnitary::SqrtPlusIY};
    ByproductGroup g;
    g.elements.push_back(Mat2::identity());
    for (std::size_t i = 0; i < g.elements.size(); ++i) {
      std::array<std::uint16_t, ByproductGroup::kGenerators> row{};
      for (std::size_t k = 0; k < ByproductGroup::kGenerators; ++k) {
        Mat2 prod = g.elements[i] * local_unitary_matrix(gens[k]);
        auto it = std::find(g.elements.begin(), g.elements.end(), prod);
        if (it == g.elements.end()) {
          if (g.elements.size() >= 4096) throw std::logic_error("byproduct group is not closing");
          g.elements.push_back(prod);
          it = g.elements.end() - 1;
        }
        row[k] = static_cast<std::uint16_t>(it - g.elements.begin());
      }
      g.right.push_back(row);
    }
    const Vec2 plus = pauli_eigenvector(PauliBasis::X, 1);
    for (const auto& m : g.elements) {
      const Vec2 bra = m.adjoint() * plus;
      g.plus_bra.push_back(bra);
      std::array<PhaseMonomial, 6> row;
      for (PauliBasis b : {PauliBasis::X, PauliBasis::Y, PauliBasis::Z}) {
        for (int sign : {1, -1}) {
          row[label_index(b, sign)] = to_monomial(inner(bra, pauli_eigenvector(b, sign)) * DyadicOmega::inv_sqrt2());
        }
      }
      g.measured.push_back(row);
      g.isolated.push_back(to_monomial(inner(bra, plus)));
    }
    return g;
  }();
  return group;
}

// ---------------------------------------------------------------------------
// Results.

enum class Method { Projector, Canonical, Dense };

inline const char* method_name(Method m) {
  switch (m) {
    case Method::Projector: return "projector";
    case Method::Canonical: return "canonical";
    case Method::Dense: return "dense";
  }
  return "?";
}

inline Method parse_method(const std::string& s) {
  if (s == "projector") return Method::Projector;
  if (s == "canonical") return Method::Canonical;
  if (s == "dense") return Method::Dense;
  throw std::invalid_argument("unknown method '" + s + "' (projector, canonical, dense)");
}

struct EngineResult {
  Method method = Method::Projector;
  /// Exact value; absent for the canonical engine (magnitude only) and dense.
  std::optional<DyadicOmega> value;
  /// Floating value (dense) or the exact value converted.
  std::complex<double> numeric{1, 0};
  bool is_zero = false;
  /// Exact log2 |Z|; absent when Z = 0 or (dense) not representable.
  std::optional<Rational> magnitude_log2;
  bool magnitude_only = false;
  double wall_us = 0;

  double log2_magnitude() const {
    if (is_zero) return -INFINITY;
    if (magnitude_log2) return boost::rational_cast<double>(*magnitude_log2);
    return std::log2(std::abs(numeric));
  }
};

// ---------------------------------------------------------------------------
// Projector engine.

struct ProjectorOptions {
  B0Rule b0 = lowest_neighbor;
  /// Fixed processing order (indices of the input graph); empty means
  /// lowest current degree first, ties by index.
  std::vector<std::size_t> order;
};

/// <+...+|G> for the graph state of `big`, exactly.
inline EngineResult projector_inner_product(const ColoredGraph& big, const ProjectorOptions& opts = {}) {
  static const int rules_checked = validate_commutation_rules();
  (void)rules_checked;
  auto t0 = std::chrono::steady_clock::now();
  EngineResult res;
  res.method = Method::Projector;
  ColoredGraph g = big;
  const std::size_t n = g.size();
  const ByproductGroup& group = byproduct_group();
  std::vector<std::uint16_t> pending(n, 0);
  std::vector<ProjectorLabel> label(n);
  PhaseMonomial acc;
  auto absorb = [&acc](const PhaseMonomial& f) {
    acc.zero = acc.zero || f.zero;
    acc.phase = (acc.phase + f.phase) % 8;
    acc.halves += f.halves;
  };

  if (!opts.order.empty()) {
    std::vector<bool> seen(n, false);
    for (auto v : opts.order) {
      if (v >= n || seen[v] || !g.present(v)) throw std::invalid_argument("projector: bad vertex order");
      seen[v] = true;
    }
    if (opts.order.size() != g.live_count()) throw std::invalid_argument("projector: order must cover all vertices");
  }

  for (std::size_t step = 0; g.live_count() > 0; ++step) {
    std::size_t a = SIZE_MAX;
    if (!opts.order.empty()) {
      a = opts.order[step];
    } else {
      std::size_t best = SIZE_MAX;
      const BitVector& live = g.present_mask();
      for (std::size_t v = live.find_first(); v < n; v = live.find_next(v + 1)) {
        std::size_t d = g.degree(v);
        if (d < best) {
          best = d;
          a = v;
          if (d == 0) break;
        }
      }
    }
    if (g.degree(a) == 0) {
      absorb(group.isolated[pending[a]]);
      g.delete_vertex(a);
    } else {
      const ProjectorLabel p = label[a];
      absorb(group.measured[pending[a]][label_index(p.basis, p.sign)]);
      MeasurementOutcome m = measure_in_place(g, a, p.basis, p.sign, opts.b0);
      if (m.collapsed) throw std::logic_error("projector: collapse on a non-isolated vertex");
      absorb({false, m.phase_eighths, 0});
      for (const auto& t : m.byproducts) {
        pending[t.vertex] = group.right[pending[t.vertex]][static_cast<std::size_t>(t.kind)];
        label[t.vertex] = commute_projector(label[t.vertex], t.kind);
      }
    }
    if (acc.zero) break;
  }

  res.value = from_monomial(acc);
  res.numeric = res.value->to_complex();
  res.is_zero = acc.zero;
  if (!acc.zero) res.magnitude_log2 = Rational(-acc.halves, 2);
  res.wall_us = std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

// ---------------------------------------------------------------------------
// Canonical engine.

struct CanonicalOverlap {
  bool orthogonal = false;
  std::size_t s = 0;  // |<phi|psi>| = 2^{-s/2}
};

/// |<phi|psi>| for two pure stabilizer states on the same qubits.
inline CanonicalOverlap canonical_inner_product(const StabilizerTableau& psi, const StabilizerTableau& phi) {
  if (psi.qubits() != phi.qubits()) throw std::invalid_argument("canonical_inner_product: qubit count mismatch");
  if (!psi.is_pure() || !phi.is_pure()) throw std::invalid_argument("canonical_inner_product: states must be pure");
  const std::size_t n = psi.qubits();
  // W |psi> = |0...0> with W = H^n . prod CZ . C, where |G> = C |psi>.
  GraphStateForm gf = to_graph_state(psi);
  Circuit w = gf.local_cliffords;
  for (auto [a, b] : gf.graph.edges()) w.push_back({GateKind::CZ, a, b});
  for (std::size_t q = 0; q < n; ++q) w.push_back({GateKind::H, q, 0});
  std::vector<PauliString> rows = phi.generators();
  for (auto& r : rows) conjugate(r, w);
  CanonicalForm cf = canonical_form(std::move(rows));
  CanonicalOverlap out;
  for (std::size_t r = cf.x_rows; r < cf.rows.size(); ++r) {
    if (cf.rows[r].negative()) out.orthogonal = true;
  }
  out.s = cf.x_rows;
  return out;
}

/// Tableau of |+>^n.
inline StabilizerTableau plus_state(std::size_t n) {
  std::vector<PauliString> gens;
  for (std::size_t q = 0; q < n; ++q) gens.push_back(single_pauli(n, q, 'X'));
  return StabilizerTableau(std::move(gens), std::vector<std::string>(n, "A"));
}

/// |<+...+|G>| via the canonical tableau route.
inline EngineResult canonical_graph_overlap(const ColoredGraph& big) {
  auto t0 = std::chrono::steady_clock::now();
  EngineResult res;
  res.method = Method::Canonical;
  res.magnitude_only = true;
  ColoredGraph c = big.compacted();
  CanonicalOverlap ov = canonical_inner_product(graph_tableau(c), plus_state(c.size()));
  res.is_zero = ov.orthogonal;
  if (!ov.orthogonal) {
    res.magnitude_log2 = Rational(-static_cast<std::int64_t>(ov.s), 2);
    res.numeric = std::pow(2.0, -0.5 * static_cast<double>(ov.s));
  } else {
    res.numeric = 0;
  }
  res.wall_us = std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

// ---------------------------------------------------------------------------
// Dense oracle.

struct DenseBudget {
  std::size_t max_qubits = 10;
  std::size_t max_total = 24;  // n_rep * n_qubits
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Z = <psi|^{n} (sigma_1 x ... x sigma_q) |psi>^{n} by direct summation.
/// `qubit_party[j]` is the index into t.parties() of qubit j's party.
inline std::complex<double> dense_multi_invariant(const StateVector& psi, const std::vector<std::size_t>& qubit_party,
                                                  const PermutationTuple& t, const DenseBudget& budget = {}) {
  const std::size_t n = qubit_party.size();
  const std::size_t reps = t.replicas();
  if (psi.size() != (std::size_t{1} << n)) throw std::invalid_argument("dense_multi_invariant: dimension mismatch");
  if (n > budget.max_qubits || n * reps > budget.max_total) {
    throw BudgetExceeded("dense oracle budget exceeded: " + std::to_string(n) + " qubits x " + std::to_string(reps) +
                         " replicas");
  }
  for (auto p : qubit_party) {
    if (p >= t.party_count()) throw std::invalid_argument("dense_multi_invariant: bad party index");
  }
  // Bit mask of each party's qubits.
  std::vector<std::uint64_t> mask(t.party_count(), 0);
  for (std::size_t j = 0; j < n; ++j) mask[qubit_party[j]] |= std::uint64_t{1} << j;
  // For bra replica r and party a, the source ket replica sigma_a^{-1}(r).
  std::vector<std::vector<std::uint32_t>> src(t.party_count());
  for (std::size_t a = 0; a < t.party_count(); ++a) src[a] = t.sigma(a).inverse().images();

  std::vector<std::complex<double>> conj_psi(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i) conj_psi[i] = std::conj(psi[i]);

  std::vector<std::uint64_t> kets(reps, 0);
  std::complex<double> total = 0;
  const std::uint64_t dim = std::uint64_t{1} << n;
  // Odometer over all replica ket assignments, with running ket products.
  std::vector<std::complex<double>> prefix(reps + 1, 1.0);
  std::function<void(std::size_t)> rec = [&](std::size_t r) {
    if (r == reps) {
      std::complex<double> bra = 1.0;
      for (std::size_t j = 0; j < reps; ++j) {
        std::uint64_t idx = 0;
        for (std::size_t a = 0; a < mask.size(); ++a) idx |= kets[src[a][j]] & mask[a];
        bra *= conj_psi[idx];
      }
      total += prefix[reps] * bra;
      return;
    }
    for (std::uint64_t x = 0; x < dim; ++x) {
      if (psi[x] == 0.0) continue;
      kets[r] = x;
      prefix[r + 1] = prefix[r] * psi[x];
      rec(r + 1);
    }
  };
  rec(0);
  return total;
}

inline EngineResult dense_result(std::complex<double> z) {
  EngineResult res;
  res.method = Method::Dense;
  res.numeric = z;
  res.is_zero = std::abs(z) < 1e-12;
  if (!res.is_zero) {
    // Snap log2|Z| to the nearest half-integer when it is that close.
    double l = 2 * std::log2(std::abs(z));
    double rl = std::round(l);
    if (std::abs(l - rl) < 1e-9) res.magnitude_log2 = Rational(static_cast<std::int64_t>(rl), 2);
  }
  return res;
}

// ---------------------------------------------------------------------------
// Dispatch.

struct EvaluateOptions {
  ProjectorOptions projector;
  DenseBudget budget;
};

inline std::vector<std::size_t> party_indices(const std::vector<std::string>& labels, const PermutationTuple& t) {
  std::vector<std::size_t> out;
  for (const auto& l : labels) {
    auto it = std::lower_bound(t.parties().begin(), t.parties().end(), l);
    if (it == t.parties().end() || *it != l) throw std::invalid_argument("no permutation for party '" + l + "'");
    out.push_back(static_cast<std::size_t>(it - t.parties().begin()));
  }
  return out;
}

/// Z(sigma) for the graph state of g.
inline EngineResult evaluate(const ColoredGraph& g, const PermutationTuple& t, Method method,
                             const EvaluateOptions& opts = {}) {
  if (method == Method::Dense) {
    auto t0 = std::chrono::steady_clock::now();
    ColoredGraph c = g.compacted();
    std::vector<std::size_t> parties = party_indices(c.parties(), t);
    if (c.size() > opts.budget.max_qubits || c.size() * t.replicas() > opts.budget.max_total) {
      throw BudgetExceeded("dense oracle budget exceeded");
    }
    EngineResult r = dense_result(dense_multi_invariant(graph_dense(c), parties, t, opts.budget));
    r.wall_us = std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - t0).count();
    return r;
  }
  ColoredGraph big = build_big_graph(g.compacted(), t);
  if (method == Method::Canonical) return canonical_graph_overlap(big);
  return projector_inner_product(big, opts.projector);
}

/// Z(sigma) for a stabilizer state. The projector and canonical engines work
/// on a local-Clifford equivalent graph; the dense engine uses the tableau's
/// own state vector.
inline EngineResult evaluate(const StabilizerTableau& st, const PermutationTuple& t, Method method,
                             const EvaluateOptions& opts = {}) {
  if (method == Method::Dense) {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<std::size_t> parties = party_indices(st.qubit_parties(), t);
    if (st.qubits() > opts.budget.max_qubits || st.qubits() * t.replicas() > opts.budget.max_total) {
      throw BudgetExceeded("dense oracle budget exceeded");
    }
    EngineResult r = dense_result(dense_multi_invariant(to_dense(st), parties, t, opts.budget));
    r.wall_us = std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - t0).count();
    return r;
  }
  return evaluate(to_graph_state(st).graph, t, method, opts);
}

/// Dense evaluation from an explicit vector, for states outside the
/// stabilizer formalism.
inline EngineResult evaluate_dense(const StateVector& psi, const std::vector<std::string>& qubit_parties,
                                   const PermutationTuple& t, const DenseBudget& budget = {}) {
  return dense_result(dense_multi_invariant(psi, party_indices(qubit_parties, t), t, budget));
}

}  // namespace multinv
