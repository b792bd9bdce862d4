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

// Text formats: stabilizer tableaux, colored graphs, X-generator lists and
// invariant specifications. Blank lines and '#' comments are ignored
// everywhere; parse errors carry the 1-based line number.

#pragma once

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "multinv/coxeter.hpp"
#include "multinv/gf2.hpp"
#include "multinv/graph.hpp"
#include "multinv/pauli.hpp"
#include "multinv/permutation.hpp"
#include "multinv/tableau.hpp"
#include "multinv/xstate.hpp"

namespace multinv {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

namespace io_detail {

struct Line {
  std::size_t number;
  std::string text;
};

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<Line> content_lines(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string raw;
  for (std::size_t n = 1; std::getline(in, raw); ++n) {
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    std::string t = trim(raw);
    if (!t.empty()) out.push_back({n, std::move(t)});
  }
  return out;
}

inline std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

/// Splits "key: rest" and lower-cases the key; nullopt when there is no colon.
inline std::optional<std::pair<std::string, std::string>> keyed(const std::string& line) {
  auto colon = line.find(':');
  if (colon == std::string::npos) return std::nullopt;
  std::string key = trim(line.substr(0, colon));
  std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) { return std::tolower(c); });
  return std::make_pair(key, trim(line.substr(colon + 1)));
}

/// "k1=A k2=B" pairs.
inline std::vector<std::pair<std::string, std::string>> assignments(const Line& l, const std::string& body) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& w : split_ws(body)) {
    auto eq = w.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == w.size()) {
      throw ParseError(l.number, "expected name=PARTY, got '" + w + "'");
    }
    out.emplace_back(w.substr(0, eq), w.substr(eq + 1));
  }
  return out;
}

/// Party list from "q0=A q1=B ..." keyed by qubit index.
inline std::vector<std::string> qubit_assignment(const Line& l, const std::string& body) {
  std::map<std::size_t, std::string> by_index;
  for (const auto& [k, v] : assignments(l, body)) {
    std::string digits = (!k.empty() && (k[0] == 'q' || k[0] == 'Q')) ? k.substr(1) : k;
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit)) {
      throw ParseError(l.number, "bad qubit name '" + k + "'");
    }
    if (!by_index.emplace(std::stoul(digits), v).second) throw ParseError(l.number, "qubit " + k + " assigned twice");
  }
  std::vector<std::string> out;
  for (const auto& [idx, party] : by_index) {
    if (idx != out.size()) throw ParseError(l.number, "qubit q" + std::to_string(out.size()) + " has no party");
    out.push_back(party);
  }
  return out;
}

inline std::string unicode_minus_to_ascii(std::string s) {
  const std::string minus = "−";
  if (s.rfind(minus, 0) == 0) s.replace(0, minus.size(), "-");
  return s;
}

}  // namespace io_detail

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Parses a "q0=A q1=B" or "v0=A ..." partition string as given on a command
/// line; keys stay as written.
inline std::vector<std::pair<std::string, std::string>> parse_partition(const std::string& text) {
  return io_detail::assignments({0, text}, text);
}

// ---------------------------------------------------------------------------
// Tableau.

/// Parses a tableau file. `parties` overrides the file's header when given.
inline StabilizerTableau parse_tableau(const std::string& text, std::optional<std::vector<std::string>> parties = {},
                                       const std::vector<std::string>& extra_parties = {}) {
  using namespace io_detail;
  std::vector<PauliString> gens;
  std::optional<std::vector<std::string>> header;
  std::size_t width = 0, first_line = 1;
  for (const auto& l : content_lines(text)) {
    if (auto kv = keyed(l.text)) {
      if (kv->first != "parties") throw ParseError(l.number, "unknown header '" + kv->first + "'");
      if (header) throw ParseError(l.number, "duplicate parties header");
      header = qubit_assignment(l, kv->second);
      continue;
    }
    std::string s = unicode_minus_to_ascii(l.text);
    int phase = 0;
    if (s[0] == '+' || s[0] == '-') {
      phase = s[0] == '-' ? 2 : 0;
      s = trim(s.substr(1));
    }
    if (s.empty()) throw ParseError(l.number, "empty generator");
    for (char c : s) {
      if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
        throw ParseError(l.number, std::string("invalid Pauli letter '") + c + "' in '" + l.text + "'");
      }
    }
    if (gens.empty()) {
      width = s.size();
      first_line = l.number;
    } else if (s.size() != width) {
      throw ParseError(l.number, "generator length " + std::to_string(s.size()) + " differs from " +
                                     std::to_string(width));
    }
    PauliString p = PauliString::parse(s);
    p.add_phase(phase);
    gens.push_back(std::move(p));
  }
  if (gens.empty()) throw ParseError(1, "no generators");
  std::vector<std::string> qp;
  if (parties) {
    qp = *parties;
  } else if (header) {
    qp = *header;
  } else {
    throw ParseError(first_line, "missing 'parties:' header");
  }
  if (qp.size() != width) {
    throw ParseError(first_line, "party assignment covers " + std::to_string(qp.size()) + " qubits, generators have " +
                                     std::to_string(width));
  }
  try {
    return StabilizerTableau(std::move(gens), std::move(qp), extra_parties);
  } catch (const InvalidStabilizer& e) {
    throw ParseError(first_line, e.what());
  }
}

inline std::string write_tableau(const StabilizerTableau& t) {
  std::ostringstream out;
  out << "parties:";
  for (std::size_t q = 0; q < t.qubits(); ++q) out << " q" << q << "=" << t.qubit_parties()[q];
  out << "\n";
  for (const auto& g : t.generators()) out << g.to_string() << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Graph.

struct GraphFile {
  ColoredGraph graph;
  std::vector<std::string> vertex_names;
};

/// Vertex names in `parties` override the file's party lines.
inline GraphFile parse_graph(const std::string& text,
                             const std::vector<std::pair<std::string, std::string>>& parties = {}) {
  using namespace io_detail;
  std::optional<std::vector<std::string>> names;
  std::size_t names_line = 0;
  std::map<std::string, std::string> party_of;
  std::vector<std::pair<Line, std::pair<std::string, std::string>>> edges;
  for (const auto& l : content_lines(text)) {
    auto kv = keyed(l.text);
    if (!kv) throw ParseError(l.number, "expected 'vertices:', 'parties:' or 'edge:'");
    if (kv->first == "vertices") {
      if (names) throw ParseError(l.number, "duplicate vertices line");
      names = split_ws(kv->second);
      names_line = l.number;
      if (names->empty()) throw ParseError(l.number, "no vertices");
    } else if (kv->first == "parties") {
      for (auto& [v, p] : assignments(l, kv->second)) {
        if (!party_of.emplace(v, p).second) throw ParseError(l.number, "vertex '" + v + "' assigned twice");
      }
    } else if (kv->first == "edge") {
      auto w = split_ws(kv->second);
      if (w.size() != 2) throw ParseError(l.number, "edge needs two endpoints");
      edges.push_back({l, {w[0], w[1]}});
    } else {
      throw ParseError(l.number, "unknown key '" + kv->first + "'");
    }
  }
  if (!names) throw ParseError(1, "missing 'vertices:' line");
  for (const auto& [v, p] : parties) party_of[v] = p;
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < names->size(); ++i) {
    if (!index.emplace((*names)[i], i).second) throw ParseError(names_line, "duplicate vertex '" + (*names)[i] + "'");
  }
  for (const auto& [v, p] : party_of) {
    if (!index.count(v)) throw ParseError(names_line, "party given for unknown vertex '" + v + "'");
  }
  std::vector<std::string> labels;
  for (const auto& v : *names) {
    auto it = party_of.find(v);
    if (it == party_of.end()) throw ParseError(names_line, "vertex '" + v + "' has no party");
    labels.push_back(it->second);
  }
  GraphFile out{ColoredGraph(names->size(), std::move(labels)), *names};
  for (const auto& [l, e] : edges) {
    auto a = index.find(e.first), b = index.find(e.second);
    if (a == index.end() || b == index.end()) throw ParseError(l.number, "edge names an unknown vertex");
    if (a->second == b->second) throw ParseError(l.number, "self-loop on '" + e.first + "'");
    out.graph.add_edge(a->second, b->second);
  }
  return out;
}

inline std::string write_graph(const ColoredGraph& g, std::vector<std::string> names = {}) {
  if (names.empty()) {
    for (std::size_t i = 0; i < g.size(); ++i) names.push_back("v" + std::to_string(i));
  }
  std::ostringstream out;
  out << "vertices:";
  for (const auto& n : names) out << " " << n;
  out << "\nparties:";
  for (std::size_t i = 0; i < g.size(); ++i) out << " " << names[i] << "=" << g.parties()[i];
  out << "\n";
  for (const auto& [a, b] : g.edges()) out << "edge: " << names[a] << " " << names[b] << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// X-generator lists.

inline XStabilizerState parse_xgen(const std::string& text, std::optional<std::vector<std::string>> parties = {},
                                   const std::vector<std::string>& extra_parties = {}) {
  using namespace io_detail;
  std::optional<std::vector<std::string>> header;
  std::vector<BitVector> rows;
  std::size_t width = 0, first_line = 1;
  for (const auto& l : content_lines(text)) {
    if (auto kv = keyed(l.text)) {
      if (kv->first != "parties") throw ParseError(l.number, "unknown header '" + kv->first + "'");
      header = qubit_assignment(l, kv->second);
      continue;
    }
    const std::string& s = l.text;
    if (rows.empty()) {
      width = s.size();
      first_line = l.number;
    } else if (s.size() != width) {
      throw ParseError(l.number, "row length differs from the first row");
    }
    BitVector v(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] != 'I' && s[i] != 'X') throw ParseError(l.number, std::string("expected I or X, got '") + s[i] + "'");
      v.set(i, s[i] == 'X');
    }
    rows.push_back(std::move(v));
  }
  std::vector<std::string> qp = parties ? *parties : header ? *header : std::vector<std::string>{};
  if (rows.empty()) {
    if (qp.empty()) throw ParseError(1, "no generators and no parties");
    width = qp.size();
  }
  if (qp.empty()) throw ParseError(first_line, "missing 'parties:' header");
  if (qp.size() != width) throw ParseError(first_line, "party assignment does not match row length");
  BitMatrix m(width);
  for (auto& r : rows) m.push_row(std::move(r));
  return XStabilizerState(m, std::move(qp), extra_parties);
}

inline std::string write_xgen(const XStabilizerState& xs) {
  std::ostringstream out;
  out << "parties:";
  for (std::size_t q = 0; q < xs.qubits(); ++q) out << " q" << q << "=" << xs.qubit_parties()[q];
  out << "\n";
  for (const auto& r : xs.n_generators().row_list()) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (r.get(i) ? 'X' : 'I');
    out << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Invariant specifications.

struct InvariantSpec {
  enum class Kind { Permutations, Coxeter, RenyiMultiEntropy };
  Kind kind = Kind::Permutations;
  PermutationTuple tuple;          // Permutations
  CoxeterSpec coxeter;             // Coxeter
  std::size_t n = 0, q = 0;        // RenyiMultiEntropy

  /// Tuple for a state whose sorted party labels are `parties`.
  PermutationTuple tuple_for(const std::vector<std::string>& parties) const {
    switch (kind) {
      case Kind::Permutations:
        return tuple;
      case Kind::Coxeter:
        return coxeter_tuple(coxeter);
      case Kind::RenyiMultiEntropy:
        if (parties.size() != q) {
          throw std::invalid_argument("renyi-multientropy spec has q = " + std::to_string(q) + " but the state has " +
                                      std::to_string(parties.size()) + " parties");
        }
        return multi_entropy_tuple(n, q, parties);
    }
    return tuple;
  }

  std::string describe() const {
    std::ostringstream out;
    switch (kind) {
      case Kind::Permutations:
        out << "permutations";
        for (std::size_t i = 0; i < tuple.party_count(); ++i) {
          out << " " << tuple.parties()[i] << ":" << tuple.sigma(i).to_string();
        }
        break;
      case Kind::Coxeter:
        out << "coxeter m:";
        for (std::size_t i = 0; i < coxeter.size(); ++i) {
          for (std::size_t j = i + 1; j < coxeter.size(); ++j) out << " " << coxeter.m(i, j);
        }
        break;
      case Kind::RenyiMultiEntropy:
        out << "renyi-multientropy n=" << n << " q=" << q;
        break;
    }
    return out.str();
  }
};

inline const char* kind_name(InvariantSpec::Kind k) {
  switch (k) {
    case InvariantSpec::Kind::Permutations:
      return "permutations";
    case InvariantSpec::Kind::Coxeter:
      return "coxeter";
    case InvariantSpec::Kind::RenyiMultiEntropy:
      return "renyi-multientropy";
  }
  return "?";
}

/// Formats:
///   type: permutations     (optional "replicas: N") then "A: (0 1 2)(3)" per party
///   type: coxeter          "m: 2 3 3" (upper triangle, row-major), optional "parties: A B C"
///   type: renyi-multientropy  "n: 2" and "q: 3"
inline InvariantSpec parse_invariant_spec(const std::string& text) {
  using namespace io_detail;
  auto lines = content_lines(text);
  if (lines.empty()) throw ParseError(1, "empty invariant spec");
  auto head = keyed(lines[0].text);
  if (!head || head->first != "type") throw ParseError(lines[0].number, "first line must be 'type: ...'");
  InvariantSpec spec;
  auto to_int = [](const Line& l, const std::string& s) {
    try {
      std::size_t pos = 0;
      long v = std::stol(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw ParseError(l.number, "expected an integer, got '" + s + "'");
    }
  };
  const std::string& type = head->second;
  if (type == "permutations") {
    spec.kind = InvariantSpec::Kind::Permutations;
    std::optional<std::size_t> reps;
    std::vector<std::pair<Line, std::pair<std::string, std::string>>> cycles;
    for (std::size_t i = 1; i < lines.size(); ++i) {
      auto kv = keyed(lines[i].text);
      if (!kv) throw ParseError(lines[i].number, "expected 'PARTY: (cycles)'");
      if (kv->first == "replicas") {
        long r = to_int(lines[i], kv->second);
        if (r < 1) throw ParseError(lines[i].number, "replicas must be positive");
        reps = static_cast<std::size_t>(r);
        continue;
      }
      // Keep the label's original case.
      std::string label = trim(lines[i].text.substr(0, lines[i].text.find(':')));
      cycles.push_back({lines[i], {label, kv->second}});
    }
    if (cycles.empty()) throw ParseError(lines[0].number, "no permutations");
    std::size_t n = reps.value_or(0);
    if (!reps) {
      for (const auto& [l, c] : cycles) {
        std::string digits;
        for (char ch : c.second) {
          if (std::isdigit(static_cast<unsigned char>(ch))) {
            digits += ch;
          } else if (!digits.empty()) {
            n = std::max<std::size_t>(n, std::stoul(digits) + 1);
            digits.clear();
          }
        }
        if (!digits.empty()) n = std::max<std::size_t>(n, std::stoul(digits) + 1);
      }
      n = std::max<std::size_t>(n, 1);
    }
    std::vector<std::string> labels;
    std::vector<Permutation> sigmas;
    for (const auto& [l, c] : cycles) {
      if (std::find(labels.begin(), labels.end(), c.first) != labels.end()) {
        throw ParseError(l.number, "party '" + c.first + "' listed twice");
      }
      try {
        sigmas.push_back(parse_cycles(c.second, n));
      } catch (const std::invalid_argument& e) {
        throw ParseError(l.number, e.what());
      }
      labels.push_back(c.first);
    }
    spec.tuple = PermutationTuple(std::move(labels), std::move(sigmas));
  } else if (type == "coxeter") {
    spec.kind = InvariantSpec::Kind::Coxeter;
    std::optional<std::vector<int>> upper;
    std::vector<std::string> parties;
    std::size_t m_line = lines[0].number;
    for (std::size_t i = 1; i < lines.size(); ++i) {
      auto kv = keyed(lines[i].text);
      if (!kv) throw ParseError(lines[i].number, "expected 'm:' or 'parties:'");
      if (kv->first == "m") {
        upper.emplace();
        for (const auto& w : split_ws(kv->second)) upper->push_back(static_cast<int>(to_int(lines[i], w)));
        m_line = lines[i].number;
      } else if (kv->first == "parties") {
        parties = split_ws(kv->second);
      } else {
        throw ParseError(lines[i].number, "unknown key '" + kv->first + "'");
      }
    }
    if (!upper) throw ParseError(m_line, "missing 'm:' line");
    try {
      spec.coxeter = CoxeterSpec::from_upper(*upper, parties);
    } catch (const std::invalid_argument& e) {
      throw ParseError(m_line, e.what());
    }
    if (!spec.coxeter.is_finite()) throw ParseError(m_line, "Coxeter group is infinite");
  } else if (type == "renyi-multientropy") {
    spec.kind = InvariantSpec::Kind::RenyiMultiEntropy;
    for (std::size_t i = 1; i < lines.size(); ++i) {
      auto kv = keyed(lines[i].text);
      if (!kv) throw ParseError(lines[i].number, "expected 'n:' or 'q:'");
      long v = to_int(lines[i], kv->second);
      if (kv->first == "n") {
        if (v < 1) throw ParseError(lines[i].number, "n must be >= 1");
        spec.n = static_cast<std::size_t>(v);
      } else if (kv->first == "q") {
        if (v < 2) throw ParseError(lines[i].number, "q must be >= 2");
        spec.q = static_cast<std::size_t>(v);
      } else {
        throw ParseError(lines[i].number, "unknown key '" + kv->first + "'");
      }
    }
    if (spec.n == 0 || spec.q == 0) throw ParseError(lines[0].number, "renyi-multientropy needs both n and q");
  } else {
    throw ParseError(lines[0].number, "unknown invariant type '" + type + "'");
  }
  return spec;
}

}  // namespace multinv
