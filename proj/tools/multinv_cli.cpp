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

// multinv: command-line front end.
//
//   multinv compute STATE SPEC [--method M] [--partition P] [--extra-parties C]
//   multinv tripartite-report STATE
//   multinv gen {ghz,bell,toric,xcube,random-graph} [...]
//   multinv benchmark [--min --max --step --spec --reps]
//   multinv verify [--trials --max-qubits]
//
// Records are JSON lines; benchmark series are CSV.

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "multinv/multinv.hpp"

namespace {

using namespace multinv;
using json = nlohmann::ordered_json;

struct Globals {
  std::string output;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::size_t budget_qubits = 10;
  std::size_t budget_total = 24;
  bool timings = false;
};

/// Exit codes.
constexpr int kOk = 0, kCheckFailed = 1, kInputError = 2, kBudgetError = 3;

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Output helpers.

class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path, std::ios::binary);
      if (!file_) throw std::runtime_error("cannot write '" + path + "'");
    }
  }
  std::ostream& out() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  std::ostringstream s;
  for (unsigned i = 0; i < len; ++i) s << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return s.str();
}

std::string rat(const Rational& r) { return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator()); }

/// 2^e as an exact "p/q" when e is an integer of moderate size.
std::optional<std::string> power_of_two(const Rational& e) {
  if (e.denominator() != 1 || e.numerator() > 62 || e.numerator() < -62) return std::nullopt;
  const std::int64_t k = e.numerator();
  return k >= 0 ? rat(Rational(std::int64_t{1} << k)) : rat(Rational(1, std::int64_t{1} << -k));
}

std::string subset_label(PartySet s, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if ((s >> i) & 1u) out += names[i];
  }
  return out.empty() ? "{}" : out;
}

// ---------------------------------------------------------------------------
// Inputs.

struct LoadedState {
  std::string format;  // tableau, graph, xgen
  StabilizerTableau tableau;
  std::optional<ColoredGraph> graph;
  std::optional<XStabilizerState> xstate;
  json descriptor;
};

std::string detect_format(const std::string& path, const std::string& text) {
  auto ends = [&](const std::string& suffix) {
    return path.size() >= suffix.size() && path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  if (ends(".graph")) return "graph";
  if (ends(".xgen")) return "xgen";
  if (ends(".tab") || ends(".stab") || ends(".tableau")) return "tableau";
  return text.find("vertices:") != std::string::npos ? "graph" : "tableau";
}

/// "q0=A q1=B" (or "0=A 1=B") as a per-qubit list.
std::vector<std::string> qubit_partition(const std::string& text) {
  std::map<std::size_t, std::string> by_index;
  for (const auto& [k, v] : parse_partition(text)) {
    std::string digits = (!k.empty() && (k[0] == 'q' || k[0] == 'Q')) ? k.substr(1) : k;
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit)) {
      throw UsageError("--partition: bad qubit name '" + k + "'");
    }
    by_index[std::stoul(digits)] = v;
  }
  std::vector<std::string> out;
  for (const auto& [i, v] : by_index) {
    if (i != out.size()) throw UsageError("--partition: qubit q" + std::to_string(out.size()) + " missing");
    out.push_back(v);
  }
  return out;
}

LoadedState load_state(const std::string& path, const std::string& format_opt, const std::string& partition,
                       const std::vector<std::string>& extra) {
  const std::string text = read_text_file(path);
  LoadedState st;
  st.format = format_opt.empty() ? detect_format(path, text) : format_opt;
  std::optional<std::vector<std::string>> qp;
  if (!partition.empty() && st.format != "graph") qp = qubit_partition(partition);
  if (st.format == "graph") {
    auto gf = parse_graph(text, partition.empty() ? std::vector<std::pair<std::string, std::string>>{}
                                                  : parse_partition(partition));
    st.graph = gf.graph;
    auto t = graph_tableau(gf.graph);
    st.tableau = StabilizerTableau(t.generators(), gf.graph.parties(), extra);
  } else if (st.format == "xgen") {
    st.xstate = parse_xgen(text, qp, extra);
    st.tableau = st.xstate->to_tableau();
  } else if (st.format == "tableau") {
    st.tableau = parse_tableau(text, qp, extra);
  } else {
    throw UsageError("unknown state format '" + st.format + "'");
  }
  st.descriptor = {{"path", path}, {"sha256", sha256_hex(text)}, {"format", st.format}};
  return st;
}

// ---------------------------------------------------------------------------
// Engine results.

const char* exactness(Method m) {
  switch (m) {
    case Method::Projector: return "exact-ring";
    case Method::Canonical: return "exact-rational";
    case Method::Dense: return "floating";
  }
  return "?";
}

json result_json(const EngineResult& r, const Globals& g) {
  json j;
  j["method"] = method_name(r.method);
  j["exactness"] = exactness(r.method);
  j["is_zero"] = r.is_zero;
  if (r.value) {
    const auto& c = r.value->coeffs();
    j["value"] = {c[0], c[1], c[2], c[3], r.value->k()};
  }
  if (r.method == Method::Dense) {
    j["numeric"] = {r.numeric.real(), r.numeric.imag()};
    j["log2_magnitude"] = r.log2_magnitude();
  }
  if (r.method == Method::Dense) {
    // Snapped to the nearest half-integer; kept apart from exact results.
    if (r.magnitude_log2) j["nearest_half_integer_log2"] = rat(*r.magnitude_log2);
  } else if (r.magnitude_log2) {
    j["magnitude_log2"] = rat(*r.magnitude_log2);
    if (auto p = power_of_two(*r.magnitude_log2)) j["magnitude"] = *p;
  } else {
    j["magnitude_log2"] = nullptr;
  }
  if (g.timings) j["wall_us"] = r.wall_us;
  return j;
}

EngineResult run_engine(const LoadedState& st, const PermutationTuple& tuple, Method m, const Globals& g) {
  EvaluateOptions opts;
  opts.budget = DenseBudget{g.budget_qubits, g.budget_total};
  auto t0 = std::chrono::steady_clock::now();
  EngineResult r = st.graph ? evaluate(*st.graph, tuple, m, opts) : evaluate(st.tableau, tuple, m, opts);
  if (r.wall_us == 0) r.wall_us = std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

/// Closed-form log2 |Z| when one applies; nullopt otherwise.
std::optional<json> analytic_json(const LoadedState& st, const InvariantSpec& spec, const PermutationTuple& tuple,
                                  Rational* log2z_out) {
  const auto& t = st.tableau;
  json j;
  j["method"] = "analytic";
  j["exactness"] = "exact-rational";
  std::optional<Rational> value;
  if (t.party_count() == 3) {
    auto ev = tripartite_multi_invariant(t, tuple);
    value = ev.log2_z;
    j["formula"] = "ghz-extraction";
  } else if (t.party_count() == 2) {
    value = bipartite_multi_invariant(t, tuple);
    j["formula"] = "bipartite";
  }
  if (spec.kind == InvariantSpec::Kind::Coxeter && spec.coxeter.size() == t.party_count()) {
    Rational conj = coxeter_invariant_conjecture(t, spec.coxeter) / 2;
    j["coxeter_conjecture_log2"] = rat(conj);
    if (st.xstate) j["x_coxeter_log2"] = rat(x_coxeter_invariant(*st.xstate, spec.coxeter));
    if (!value) {
      value = conj;
      j["formula"] = "coxeter-conjecture";
    }
  }
  if (!value) return std::nullopt;
  j["magnitude_log2"] = rat(*value);
  if (auto p = power_of_two(*value)) j["magnitude"] = *p;
  *log2z_out = *value;
  return j;
}

// ---------------------------------------------------------------------------
// compute

struct ComputeArgs {
  std::string state, spec, method = "all", partition, format;
  std::vector<std::string> extra;
};

int cmd_compute(const ComputeArgs& a, const Globals& g) {
  LoadedState st = load_state(a.state, a.format, a.partition, a.extra);
  const std::string spec_text = read_text_file(a.spec);
  InvariantSpec spec = parse_invariant_spec(spec_text);
  PermutationTuple tuple = spec.tuple_for(st.tableau.party_names());
  party_indices(st.tableau.qubit_parties(), tuple);  // every party needs a permutation

  std::vector<std::string> methods;
  if (a.method == "all") {
    methods = {"projector", "canonical", "dense", "analytic"};
  } else {
    methods = {a.method};
  }
  json rec;
  rec["command"] = "compute";
  rec["inputs"] = {{"state", st.descriptor},
                   {"spec", {{"path", a.spec}, {"sha256", sha256_hex(spec_text)}, {"type", kind_name(spec.kind)}}}};
  rec["invariant"] = spec.describe();
  rec["qubits"] = st.tableau.qubits();
  rec["parties"] = st.tableau.party_names();
  rec["partition"] = st.tableau.qubit_parties();
  rec["replicas"] = tuple.replicas();
  rec["degenerate_partition"] = st.tableau.has_empty_party();
  json results = json::array();
  json skipped = json::array();
  std::vector<Rational> exact;
  std::vector<double> floating;
  bool any_zero = false, any_nonzero = false;
  for (const auto& m : methods) {
    if (m == "analytic") {
      Rational v;
      auto j = analytic_json(st, spec, tuple, &v);
      if (!j) {
        if (a.method != "all") throw UsageError("no closed form applies (needs 2 or 3 parties or a Coxeter spec)");
        skipped.push_back({{"method", "analytic"}, {"reason", "not applicable"}});
        continue;
      }
      exact.push_back(v);
      any_nonzero = true;
      results.push_back(*j);
      continue;
    }
    Method method;
    try {
      method = parse_method(m);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    EngineResult r;
    try {
      r = run_engine(st, tuple, method, g);
    } catch (const BudgetExceeded& e) {
      if (a.method != "all") throw;
      skipped.push_back({{"method", "dense"}, {"reason", "budget"}});
      continue;
    }
    (r.is_zero ? any_zero : any_nonzero) = true;
    if (r.magnitude_log2 && r.method != Method::Dense) exact.push_back(*r.magnitude_log2);
    if (r.method == Method::Dense && !r.is_zero) floating.push_back(std::abs(r.numeric));
    results.push_back(result_json(r, g));
  }
  rec["results"] = results;
  if (!skipped.empty()) rec["skipped"] = skipped;
  if (results.size() > 1) {
    bool agree = !(any_zero && any_nonzero);
    for (const auto& e : exact) agree = agree && e == exact.front();
    if (!exact.empty()) {
      const double ref = std::exp2(boost::rational_cast<double>(exact.front()));
      for (double f : floating) agree = agree && std::abs(f - ref) <= 1e-9;
    }
    rec["agreement"] = {{"magnitude", agree}};
  }
  if (spec.kind == InvariantSpec::Kind::RenyiMultiEntropy && spec.n > 1 && !exact.empty()) {
    rec["renyi_multientropy"] = rat(renyi_multientropy_from_log2z(exact.front(), static_cast<std::int64_t>(spec.n)));
  }
  Sink sink(g.output);
  sink.out() << rec.dump() << "\n";
  if (rec.contains("agreement") && !rec["agreement"]["magnitude"].get<bool>()) return kCheckFailed;
  return kOk;
}

// ---------------------------------------------------------------------------
// tripartite-report

struct ReportArgs {
  std::string state, partition, format;
  std::vector<std::string> extra;
};

int cmd_tripartite_report(const ReportArgs& a, const Globals& g) {
  LoadedState st = load_state(a.state, a.format, a.partition, a.extra);
  const auto& t = st.tableau;
  if (t.party_count() != 3) {
    throw UsageError("tripartite-report needs exactly three parties (use --extra-parties for empty ones)");
  }
  auto c = ghz_extraction_counts(t);
  auto tab = subgroup_table(t);
  const auto names = t.party_names();
  const std::int64_t l = static_cast<std::int64_t>(product_subgroup_order(t, {3, 6, 5}));
  json rec;
  rec["command"] = "tripartite-report";
  rec["inputs"] = {{"state", st.descriptor}};
  rec["parties"] = names;
  rec["qubits"] = t.qubits();
  rec["degenerate_partition"] = c.degenerate_partition;
  rec["ghz_extraction"] = {{"p", c.p}, {"m_" + names[0] + names[1], c.m_ab}, {"m_" + names[1] + names[2], c.m_bc},
                           {"m_" + names[0] + names[2], c.m_ac}};
  json table;
  for (PartySet s = 0; s < 8; ++s) table[subset_label(s, names)] = tab[s];
  rec["subgroup_log2_order"] = table;
  rec["product_subgroup_log2_order"] = l;
  json ent;
  bool consistent = true;
  const int pair_m[3][2] = {{c.m_ab, c.m_ac}, {c.m_ab, c.m_bc}, {c.m_bc, c.m_ac}};
  for (std::size_t i = 0; i < 3; ++i) {
    Rational s = entanglement_entropy(t, PartySet{1} << i);
    ent[names[i]] = rat(s);
    consistent = consistent && s == Rational(static_cast<std::int64_t>(pair_m[i][0] + pair_m[i][1] + c.p));
  }
  rec["entanglement_entropy"] = ent;
  rec["extraction_consistent"] = consistent;
  rec["renyi2_multientropy"] = rat(renyi2_multientropy(t));
  // E_n = a + b n with a = log|G| - log|G_prod|, b = (log|G_prod| - sum log|G_X|) / 2.
  const std::int64_t singles = tab[1] + tab[2] + tab[4];
  rec["renyi_n_formula"] = {{"constant", rat(Rational(tab[7] - l))}, {"slope", rat(Rational(l - singles, 2))}};
  auto k = kempe_invariant(t);
  rec["kempe"] = {{"trusted_log2", rat(k.trusted_log2_z)},
                  {"display_as_z2_log2", rat(k.display_as_z2_log2_z)},
                  {"display_as_z2_agrees", k.display_as_z2_agrees},
                  {"display_as_z_agrees", k.display_as_z_agrees}};
  Sink sink(g.output);
  sink.out() << rec.dump() << "\n";
  return consistent ? kOk : kCheckFailed;
}

// ---------------------------------------------------------------------------
// gen

struct GenArgs {
  std::string model, coords;
  std::size_t L = 2, n = 6, parties = 3;
  double p = 0.5;
  bool connected = false;
};

json coords_json(const std::string& model, const LatticeState& ls) {
  json q = json::array();
  for (std::size_t i = 0; i < ls.coordinates.size(); ++i) {
    q.push_back({{"qubit", i}, {"coords", ls.coordinates[i]}, {"party", ls.state.qubit_parties()[i]}});
  }
  return {{"model", model}, {"L", ls.L}, {"units", "half lattice spacing"}, {"qubits", q}};
}

int cmd_gen(const GenArgs& a, const Globals& g) {
  std::string text;
  std::optional<json> sidecar;
  if (a.model == "ghz") {
    ColoredGraph path(3, std::vector<std::string>{"A", "B", "C"});
    path.add_edge(0, 1);
    path.add_edge(1, 2);
    text = write_graph(path);
  } else if (a.model == "bell") {
    text = "parties: q0=A q1=B\n+XX\n+ZZ\n";
  } else if (a.model == "toric" || a.model == "xcube") {
    if (a.L < 2) throw UsageError("--L must be at least 2");
    if (a.parties < 1) throw UsageError("--parties must be positive");
    LatticeState ls = a.model == "toric" ? build_toric_code(a.L, a.parties) : build_x_cube(a.L, a.parties);
    text = write_xgen(ls.state);
    sidecar = coords_json(a.model, ls);
  } else if (a.model == "random-graph") {
    if (a.n < 1) throw UsageError("--n must be positive");
    if (a.p < 0 || a.p > 1) throw UsageError("--p must lie in [0, 1]");
    if (a.parties < 1) throw UsageError("--parties must be positive");
    auto labels = default_party_labels(a.parties);
    std::vector<std::string> assign;
    for (std::size_t i = 0; i < a.n; ++i) assign.push_back(labels[i % labels.size()]);
    std::mt19937_64 rng(g.seed);
    ColoredGraph gr = a.connected ? random_connected_graph(assign, a.p, rng) : random_graph(assign, a.p, rng);
    text = write_graph(gr);
  } else {
    throw UsageError("unknown model '" + a.model + "' (ghz, bell, toric, xcube, random-graph)");
  }
  Sink sink(g.output);
  sink.out() << text;
  if (sidecar) {
    std::string path = a.coords;
    if (path.empty() && !g.output.empty() && g.output != "-") path = g.output + ".coords.json";
    if (!path.empty()) {
      std::ofstream c(path, std::ios::binary);
      if (!c) throw std::runtime_error("cannot write '" + path + "'");
      c << sidecar->dump(1) << "\n";
    }
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// benchmark

struct BenchArgs {
  std::size_t min = 10, max = 100, step = 10, reps = 5;
  std::string spec, methods = "projector,canonical";
  double p = 0.5;
};

double fit_slope(const std::vector<std::pair<double, double>>& pts) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(pts.size());
  for (const auto& [x, y] : pts) {
    const double lx = std::log(x), ly = std::log(y);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

int cmd_benchmark(const BenchArgs& a, const Globals& g) {
  if (a.min < 1 || a.max < a.min || a.step < 1 || a.reps < 1) throw UsageError("benchmark: bad size range");
  InvariantSpec spec;
  if (a.spec.empty()) {
    spec.kind = InvariantSpec::Kind::RenyiMultiEntropy;
    spec.n = 2;
    spec.q = 3;
  } else {
    spec = parse_invariant_spec(read_text_file(a.spec));
  }
  std::vector<Method> methods;
  {
    std::stringstream ss(a.methods);
    for (std::string m; std::getline(ss, m, ',');) {
      try {
        methods.push_back(parse_method(m));
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
    }
  }
  std::size_t q = spec.kind == InvariantSpec::Kind::RenyiMultiEntropy ? spec.q
                  : spec.kind == InvariantSpec::Kind::Coxeter         ? spec.coxeter.size()
                                                                      : spec.tuple.party_count();
  std::vector<std::string> labels = spec.kind == InvariantSpec::Kind::Coxeter ? spec.coxeter.parties()
                                    : spec.kind == InvariantSpec::Kind::Permutations ? spec.tuple.parties()
                                                                                     : default_party_labels(q);
  PermutationTuple tuple = spec.tuple_for(labels);

  Sink sink(g.output);
  std::ostream& out = sink.out();
  out << "engine,vertices,replicas,median_us\n";
  std::map<Method, std::vector<std::pair<double, double>>> series;
  std::vector<std::string> excluded;
  for (std::size_t n = a.min; n <= a.max; n += a.step) {
    // One fresh graph per repetition; the median is over instances.
    std::mt19937_64 rng(g.seed + n);
    std::vector<std::string> assign;
    for (std::size_t i = 0; i < n; ++i) assign.push_back(labels[i % labels.size()]);
    std::vector<ColoredGraph> graphs;
    for (std::size_t r = 0; r < a.reps; ++r) graphs.push_back(random_connected_graph(assign, a.p, rng));
    for (Method m : methods) {
      if (m == Method::Dense && (n > g.budget_qubits || n * tuple.replicas() > g.budget_total)) {
        excluded.push_back("dense@" + std::to_string(n));
        continue;
      }
      std::vector<double> times;
      for (std::size_t r = 0; r < a.reps; ++r) {
        auto t0 = std::chrono::steady_clock::now();
        EvaluateOptions opts;
        opts.budget = DenseBudget{g.budget_qubits, g.budget_total};
        auto res = evaluate(graphs[r], tuple, m, opts);
        (void)res;
        times.push_back(std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - t0).count());
      }
      std::nth_element(times.begin(), times.begin() + times.size() / 2, times.end());
      const double med = times[times.size() / 2];
      series[m].emplace_back(static_cast<double>(n), std::max(med, 1e-3));
      out << method_name(m) << "," << n << "," << tuple.replicas() << "," << std::fixed << std::setprecision(3) << med
          << "\n";
    }
  }
  bool header = false;
  for (const auto& [m, pts] : series) {
    if (pts.size() < 2) continue;
    if (!header) {
      out << "\nengine,slope,points\n";
      header = true;
    }
    out << method_name(m) << "," << std::fixed << std::setprecision(4) << fit_slope(pts) << "," << pts.size() << "\n";
  }
  if (!excluded.empty()) std::cerr << "dense engine excluded above budget at " << excluded.size() << " sizes\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
  std::size_t trials = 100, max_qubits = 6;
  bool inject_fault = false;
};

struct Outcome {
  std::string check;
  bool asserted = true;
  bool ok = true;
  std::string detail;
  bool dense_used = false;
};

Rational projector_log2(const StabilizerTableau& t, const PermutationTuple& tuple) {
  auto r = evaluate(t, tuple, Method::Projector);
  if (r.is_zero || !r.magnitude_log2) throw std::logic_error("projector engine returned zero");
  return *r.magnitude_log2;
}

StabilizerTableau random_state(std::size_t n, const std::vector<std::string>& labels, std::mt19937_64& rng) {
  auto parties = random_parties(n, labels, rng);
  auto t = random_tableau(parties, rng);
  return StabilizerTableau(t.generators(), parties, labels);
}

std::vector<Outcome> verify_trial(std::uint64_t seed, const VerifyArgs& a, const Globals& g) {
  std::vector<Outcome> out;
  std::mt19937_64 rng(seed);
  const std::vector<std::string> abc = {"A", "B", "C"};
  const std::size_t maxq = std::max<std::size_t>(a.max_qubits, 1);
  auto size = [&](std::size_t cap) { return 1 + rng() % std::min(maxq, cap); };
  auto add = [&](std::string check, bool asserted, bool ok, std::string detail = {}) {
    out.push_back({std::move(check), asserted, ok, ok ? std::string{} : std::move(detail)});
  };
  const std::string tag = "seed " + std::to_string(seed);

  // Tri-engine agreement on a graph state.
  {
    const std::size_t nq = size(6);
    const std::size_t q = 1 + rng() % 3;
    auto labels = default_party_labels(q);
    ColoredGraph gr = random_graph(random_parties(nq, labels, rng), 0.5, rng);
    std::vector<PermutationTuple> pool;
    if (q == 3) {
      pool = {multi_entropy_tuple(2, 3), multi_entropy_tuple(3, 3), coxeter_tuple(CoxeterSpec::tripartite(2, 3, 3)),
              coxeter_tuple(CoxeterSpec::tripartite(2, 2 + rng() % 3, 2))};
    } else if (q == 2) {
      pool = {multi_entropy_tuple(2, 2, labels), multi_entropy_tuple(3, 2, labels),
              coxeter_tuple(CoxeterSpec::from_upper({static_cast<int>(2 + rng() % 4)}, labels))};
    }
    pool.push_back(random_tuple(q, 1 + rng() % 4, rng));
    if (q == 1) pool.back() = PermutationTuple(labels, {random_permutation(1 + rng() % 4, rng)});
    PermutationTuple tuple = pool[rng() % pool.size()];
    // Tuples use default labels; missing parties are fine, extra ones are not.
    auto p = evaluate(gr, tuple, Method::Projector);
    auto c = evaluate(gr, tuple, Method::Canonical);
    bool ok = p.is_zero == c.is_zero && p.magnitude_log2 == c.magnitude_log2;
    Outcome o{"tri_engine", true, ok, ok ? "" : tag + ": projector and canonical differ"};
    EvaluateOptions opts;
    opts.budget = DenseBudget{g.budget_qubits, g.budget_total};
    if (gr.size() <= g.budget_qubits && gr.size() * tuple.replicas() <= g.budget_total) {
      auto d = evaluate(gr, tuple, Method::Dense, opts);
      const double ref = p.is_zero ? 0.0 : std::abs(p.value->to_complex());
      const double phase_err = p.is_zero ? std::abs(d.numeric) : std::abs(d.numeric - p.value->to_complex());
      bool dense_ok = std::abs(std::abs(d.numeric) - ref) <= 1e-9 && phase_err <= 1e-9;
      if (!dense_ok) {
        o.ok = false;
        o.detail = tag + ": dense differs";
      }
      o.dense_used = true;
    }
    out.push_back(o);
  }

  // Closed forms against the projector engine.
  {
    auto t = random_state(size(5), abc, rng);
    auto tuple = random_tuple(3, 1 + rng() % 4, rng);
    const Rational formula = tripartite_multi_invariant(t, tuple).log2_z;
    // Test-only fault: perturbs one closed form so the harness must fail.
    const Rational reported = a.inject_fault ? formula + Rational(1, 2) : formula;
    add("tripartite_formula", true, reported == projector_log2(t, tuple), tag);

    auto sub = subgroup_table(t);
    add("group_order_identity", true, sub[3] + sub[6] + sub[5] == sub[7] + sub[1] + sub[2] + sub[4], tag);
    add("renyi2_formula", true, renyi2_multientropy(t) == -projector_log2(t, multi_entropy_tuple(2, 3)), tag);
    auto t4 = random_state(size(4), abc, rng);
    add("renyi3_formula", true,
        renyi_multientropy_tripartite(t4, 3) ==
            renyi_multientropy_from_log2z(projector_log2(t4, multi_entropy_tuple(3, 3)), 3),
        tag);
    auto kr = kempe_invariant(t);
    add("kempe_trusted", true, kr.trusted_log2_z == projector_log2(t, kempe_tuple()), tag);
    add("kempe_display_as_z2", false, kr.display_as_z2_agrees, tag);
    auto topo = tripartite_topology(tuple);
    if (topo.genus == 0 && topo.components == 1) {
      add("grouped_formula_genus0", true, grouped_tripartite_formula(t, tuple) == formula, tag);
    }
  }

  // Coxeter conjecture at q = 3 (asserted) and bipartition identity.
  {
    std::vector<CoxeterSpec> specs = {CoxeterSpec::tripartite(2, 3, 3), CoxeterSpec::all_commuting(3),
                                      CoxeterSpec::tripartite(2, 2 + static_cast<int>(rng() % 3), 2)};
    const CoxeterSpec& spec = specs[rng() % specs.size()];
    auto t = random_state(size(6), abc, rng);
    add("coxeter_conjecture_q3", true,
        coxeter_invariant_conjecture(t, spec) == Rational(2) * projector_log2(t, coxeter_tuple(spec)), tag);
    const std::size_t q = 2 + rng() % 3;
    auto labels = default_party_labels(q);
    auto tq = random_state(size(6), labels, rng);
    add("bipartition_identity", true,
        bipartition_product_form(tq) == coxeter_invariant_conjecture(tq, CoxeterSpec::all_commuting(q)), tag);
  }

  // Gauge invariance of the exact value.
  {
    const std::size_t nq = size(5);
    ColoredGraph gr = random_graph(random_parties(nq, abc, rng), 0.5, rng);
    auto tuple = random_tuple(3, 1 + rng() % 4, rng);
    auto moved = tuple.relabeled(random_permutation(tuple.replicas(), rng), random_permutation(tuple.replicas(), rng));
    auto x = evaluate(gr, tuple, Method::Projector), y = evaluate(gr, moved, Method::Projector);
    add("gauge_invariance", true, x.is_zero == y.is_zero && (x.is_zero || *x.value == *y.value), tag);
  }

  // X-stabilizer states.
  {
    const std::size_t nq = size(6);
    BitMatrix m(nq);
    for (std::size_t r = 0, k = rng() % (nq + 1); r < k; ++r) {
      BitVector v(nq);
      for (std::size_t i = 0; i < nq; ++i) v.set(i, rng() & 1u);
      m.push_row(std::move(v));
    }
    XStabilizerState xs(m, random_parties(nq, abc, rng), abc);
    auto t = xs.to_tableau();
    auto gt = subgroup_table(t);
    auto nt = xs.n_table(), tt = xs.tilde_table();
    bool split = true;
    for (PartySet r = 0; r < 8; ++r) split = split && gt[r] == nt[r] + tt[r];
    add("x_state_split", true, split, tag);
    auto spec = CoxeterSpec::tripartite(2, 3, 3);
    add("x_state_coxeter", true,
        x_coxeter_invariant(xs, spec) == projector_log2(t, coxeter_tuple(spec)) &&
            Rational(2) * x_coxeter_invariant(xs, spec) == coxeter_invariant_conjecture(t, spec),
        tag);
  }

  // q = 4 conjecture comparisons: reported, never asserted.
  {
    auto labels = default_party_labels(4);
    auto t = random_state(size(6), labels, rng);
    auto m2 = CoxeterSpec::all_commuting(4);
    add("conjecture_q4_all_m2", false,
        coxeter_invariant_conjecture(t, m2) == Rational(2) * projector_log2(t, coxeter_tuple(m2)), tag);
    static const CoxeterSpec a4 = CoxeterSpec::from_upper({3, 2, 2, 3, 2, 3});
    auto t2 = random_state(size(5), labels, rng);
    add("conjecture_q4_A4", false,
        coxeter_invariant_conjecture(t2, a4) == Rational(2) * projector_log2(t2, coxeter_tuple(a4)), tag);
  }
  return out;
}

int cmd_verify(const VerifyArgs& a, const Globals& g) {
  if (a.trials < 1) throw UsageError("--trials must be positive");
  std::vector<std::vector<Outcome>> per_trial(a.trials);
  std::atomic<std::size_t> next{0};
  std::mutex err_mu;
  std::string first_error;
  const unsigned workers =
      std::max(1u, std::min<unsigned>(g.threads ? g.threads : std::thread::hardware_concurrency(), a.trials));
  auto work = [&] {
    for (std::size_t i; (i = next++) < a.trials;) {
      try {
        per_trial[i] = verify_trial(g.seed + i, a, g);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(err_mu);
        per_trial[i] = {{"exception", true, false, "seed " + std::to_string(g.seed + i) + ": " + e.what()}};
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();

  json checks = json::object(), reports = json::object(), failures = json::array();
  std::map<std::string, std::size_t> dense_used;
  bool ok = true;
  for (const auto& trial : per_trial) {
    for (const auto& o : trial) {
      json& slot = o.asserted ? checks[o.check] : reports[o.check];
      if (slot.is_null()) slot = o.asserted ? json{{"pass", 0}, {"fail", 0}} : json{{"agree", 0}, {"disagree", 0}};
      const char* key = o.asserted ? (o.ok ? "pass" : "fail") : (o.ok ? "agree" : "disagree");
      slot[key] = slot[key].get<std::size_t>() + 1;
      if (o.dense_used) ++dense_used[o.check];
      if (o.asserted && !o.ok) {
        ok = false;
        if (failures.size() < 20) failures.push_back(o.check + ": " + o.detail);
      }
    }
  }
  for (auto& [name, n] : dense_used) checks[name]["dense_checked"] = n;
  for (auto& [name, r] : reports.items()) {
    const auto agree = r["agree"].get<std::size_t>(), dis = r["disagree"].get<std::size_t>();
    r["trials"] = agree + dis;
  }
  json rec;
  rec["command"] = "verify";
  rec["seed"] = g.seed;
  rec["trials"] = a.trials;
  rec["max_qubits"] = a.max_qubits;
  rec["checks"] = checks;
  rec["reports"] = reports;
  rec["failures"] = failures;
  rec["ok"] = ok;
  Sink sink(g.output);
  sink.out() << rec.dump() << "\n";
  return ok ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multinv: local-unitary multi-invariants of stabilizer states"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--output,-o", g.output, "Write output to this path instead of stdout");
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--threads", g.threads, "Worker threads (0 = hardware)");
  app.add_option("--budget-qubits", g.budget_qubits, "Largest state the dense oracle accepts");
  app.add_option("--budget-total", g.budget_total, "Largest qubits x replicas the dense oracle accepts");
  app.add_flag("--timings", g.timings, "Include wall times in records");

  ComputeArgs ca;
  auto* compute = app.add_subcommand("compute", "Evaluate a multi-invariant");
  compute->add_option("state", ca.state, "State file (tableau, graph or X-generator list)")->required();
  compute->add_option("spec", ca.spec, "Invariant spec file")->required();
  compute->add_option("--method,-m", ca.method, "projector, canonical, dense, analytic or all")
      ->check(CLI::IsMember({"projector", "canonical", "dense", "analytic", "all"}));
  compute->add_option("--partition", ca.partition, "Party assignment overriding the file, e.g. \"q0=A q1=B\"");
  compute->add_option("--format", ca.format, "Force the state format")
      ->check(CLI::IsMember({"tableau", "graph", "xgen"}));
  compute->add_option("--extra-parties", ca.extra, "Parties that own no qubits")->delimiter(',');

  ReportArgs ra;
  auto* report = app.add_subcommand("tripartite-report", "GHZ extraction counts and closed forms");
  report->add_option("state", ra.state, "State file")->required();
  report->add_option("--partition", ra.partition, "Party assignment overriding the file");
  report->add_option("--format", ra.format, "Force the state format")
      ->check(CLI::IsMember({"tableau", "graph", "xgen"}));
  report->add_option("--extra-parties", ra.extra, "Parties that own no qubits")->delimiter(',');

  GenArgs ga;
  auto* gen = app.add_subcommand("gen", "Write a model state");
  gen->add_option("model", ga.model, "ghz, bell, toric, xcube or random-graph")->required();
  gen->add_option("--L", ga.L, "Lattice size (toric, xcube)");
  gen->add_option("--n", ga.n, "Vertex count (random-graph)");
  gen->add_option("--p", ga.p, "Edge probability (random-graph)");
  gen->add_option("--parties", ga.parties, "Party count (round-robin or slabs)");
  gen->add_flag("--connected", ga.connected, "Reject disconnected random graphs");
  gen->add_option("--coords", ga.coords, "Path for the lattice coordinate sidecar");

  BenchArgs ba;
  auto* bench = app.add_subcommand("benchmark", "Time the engines on random connected graphs");
  bench->add_option("--min", ba.min, "Smallest vertex count");
  bench->add_option("--max", ba.max, "Largest vertex count");
  bench->add_option("--step", ba.step, "Vertex count step");
  bench->add_option("--reps", ba.reps, "Repetitions per size (median is reported)");
  bench->add_option("--spec", ba.spec, "Invariant spec file (default: n = 2, q = 3 multi-entropy)");
  bench->add_option("--methods", ba.methods, "Comma-separated engines");
  bench->add_option("--p", ba.p, "Edge probability");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Randomized property campaign");
  verify->add_option("--trials", va.trials, "Number of trials");
  verify->add_option("--max-qubits", va.max_qubits, "Largest random state");
  verify->add_flag("--inject-fault", va.inject_fault)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kInputError;
  }

  try {
    if (*compute) return cmd_compute(ca, g);
    if (*report) return cmd_tripartite_report(ra, g);
    if (*gen) return cmd_gen(ga, g);
    if (*bench) return cmd_benchmark(ba, g);
    if (*verify) return cmd_verify(va, g);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kInputError;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget error: " << e.what() << "\n";
    return kBudgetError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCheckFailed;
  }
  return kOk;
}
