#include "kmpscp/harness.hpp"

#include <algorithm>
#include <cstdio>
#include <random>
#include <set>
#include <sstream>

#include "kmpscp/interpreter.hpp"
#include "kmpscp/kmp.hpp"

namespace kmpscp {

// ---------------------------------------------------------------------------
// Corpus

std::vector<std::string> binary_patterns(std::size_t max_len) {
  std::vector<std::string> out;
  for (std::size_t len = 1; len <= max_len; ++len) {
    for (std::size_t bits = 0; bits < (std::size_t{1} << len); ++bits) {
      std::string w(len, 'a');
      for (std::size_t i = 0; i < len; ++i)
        if (bits & (std::size_t{1} << (len - 1 - i))) w[i] = 'b';
      out.push_back(w);
    }
  }
  return out;
}

Corpus Corpus::default_corpus(std::uint64_t seed) {
  Corpus c;
  c.seed = seed;
  c.patterns = binary_patterns(6);
  for (const char* p : {"aab", "ababa", "abcabcaca", "abcabcacab"})
    if (std::find(c.patterns.begin(), c.patterns.end(), p) == c.patterns.end()) c.patterns.push_back(p);
  return c;
}

char fresh_letter(std::string_view pattern) {
  for (char c = 'z'; c >= 'a'; --c)
    if (pattern.find(c) == std::string_view::npos) return c;
  for (char c = '0'; c <= '9'; ++c)
    if (pattern.find(c) == std::string_view::npos) return c;
  throw std::invalid_argument("pattern uses every letter");
}

std::string test_alphabet(std::string_view pattern) {
  std::string out;
  for (char c : pattern)
    if (out.find(c) == std::string::npos) out += c;
  return out + fresh_letter(pattern);
}

// ---------------------------------------------------------------------------
// Building

Configuration entry_configuration(std::string_view pattern) {
  return Configuration{Expr::call("S", {Expr::word(pattern), Expr::list_param("y")}), {}};
}

Configuration lemma1_configuration(std::string_view pattern, std::size_t i) {
  if (i < 1 || i > pattern.size()) throw std::out_of_range("lemma1_configuration index");
  Expr y = Expr::list_param("y");
  return Configuration{Expr::call("L", {Expr::word(pattern.substr(i)), y, Expr::word(pattern),
                                        Expr::prefixed(pattern.substr(1, i - 1), y)}),
                       {}};
}

Specialization specialize(const std::string& pattern, const ScpOptions& options) {
  if (pattern.empty()) throw std::invalid_argument("pattern must be nonempty");
  Specialization s{pattern, supercompile(naive_matcher(), entry_configuration(pattern), options), std::nullopt, {}};
  try {
    s.residual = residualize(s.scp.graph);
  } catch (const Error& e) {
    s.residual_error = e.what();
  }
  return s;
}

namespace {

CheckResult pass() { return {true, {}}; }
CheckResult fail(std::string why) { return {false, std::move(why)}; }

bool is_s_prime(const Configuration& c, std::string_view pattern) {
  const Expr& e = c.expr;
  if (!e.is_call() || e.name() != "S" || e.args().size() != 2) return false;
  auto w = e.args()[0].as_word();
  const Expr& y = e.args()[1];
  return w && *w == pattern && y.kind() == ExprKind::Cons && y.head().is_param() &&
         y.tail().kind() == ExprKind::ListParam;
}

// Every configuration the graph passed through: nodes, and transients
// recorded on the edge into a node. `node` is where the occurrence sits.
struct Occurrence {
  const Configuration* config;
  std::size_t node;
  bool passed;
};

std::vector<Occurrence> occurrences(const ProcessGraph& g) {
  std::vector<Occurrence> out;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const GraphNode& n = g.node(i);
    if (n.incoming)
      for (const auto& c : n.incoming->passed) out.push_back({&c, i, true});
    out.push_back({&n.config, i, false});
  }
  return out;
}

}  // namespace

CheckResult check_lemma1(const Specialization& s) {
  const ProcessGraph& g = s.scp.graph;
  const std::string& pi = s.pattern;
  const std::size_t n = pi.size();
  FirstPath fp;
  try {
    fp = first_path(g);
  } catch (const Error& e) {
    return fail(e.what());
  }
  std::vector<Configuration> pivots;
  for (std::size_t i : fp.nodes)
    if (g.node(i).kind == NodeKind::Pivot) pivots.push_back(g.node(i).config);
  if (pivots.size() != n) return fail("expected " + std::to_string(n) + " first-path pivots, found " + std::to_string(pivots.size()));
  if (!alpha_equivalent(pivots[0], entry_configuration(pi))) return fail("first pivot is " + to_string(pivots[0]));
  std::size_t prev = pi.size() + 1;
  for (std::size_t i = 1; i < n; ++i) {
    Configuration want = lemma1_configuration(pi, i);
    if (!alpha_equivalent(pivots[i], want)) return fail("pivot " + std::to_string(i) + " is " + to_string(pivots[i]) + ", expected " + to_string(want));
    auto w = pivots[i].expr.args()[0].as_word();
    if (!w || w->size() >= prev) return fail("remaining pattern does not shrink at pivot " + std::to_string(i));
    prev = w->size();
  }
  const GraphNode& t = g.node(fp.terminal);
  if (t.config.expr.kind() != ExprKind::True) return fail("first path ends in " + to_string(t.config));
  const auto& passed = t.incoming->passed;
  Configuration last = lemma1_configuration(pi, n);
  if (std::none_of(passed.begin(), passed.end(), [&](const Configuration& c) { return alpha_equivalent(c, last); }))
    return fail("transient " + to_string(last) + " not seen before T");
  return pass();
}

CheckResult check_lemma2(const Specialization& s) {
  const ProcessGraph& g = s.scp.graph;
  if (g.node(g.root()).kind != NodeKind::Pivot) return fail("root is not a pivot");
  for (std::size_t i = 0; i < g.size(); ++i) {
    const GraphNode& n = g.node(i);
    if (n.fold && g.node(n.fold->target).config.expr.name() == "S" && n.fold->target != g.root())
      return fail("node " + std::to_string(i) + " folds to a non-root S configuration");
  }
  for (const auto& o : occurrences(g)) {
    if (!is_s_prime(*o.config, s.pattern)) continue;
    // Passed transients sit on the edge into o.node, so both kinds share its ancestors.
    const std::vector<std::size_t> above = g.ancestors(o.node);
    for (std::size_t a : above)
      if (a != g.root() && g.node(a).config.expr.name() == "S")
        return fail(to_string(*o.config) + " has S ancestor " + to_string(g.node(a).config));
  }
  return pass();
}

CheckResult check_lemma3(const Specialization& s) {
  const ProcessGraph& g = s.scp.graph;
  const std::string& pi = s.pattern;
  const Configuration entry = entry_configuration(pi);
  const Configuration l1 = pi.size() > 1 ? lemma1_configuration(pi, 1) : Configuration{};
  for (const auto& o : occurrences(g)) {
    const Configuration& c = *o.config;
    if (!is_s_prime(c, pi)) continue;
    const std::string sa = c.expr.args()[1].head().name;
    Substitution pin;
    pin.symbols.emplace(sa, Atom::literal(pi[0]));
    const bool case1_possible = apply(pin, c.restriction).satisfiable();
    Restriction r2 = c.restriction;
    r2.add(Term::param_named(sa), Term::literal(pi[0]));
    const bool case2_possible = r2.satisfiable();

    std::vector<std::size_t> next;
    if (o.passed) {
      next.push_back(o.node);
    } else {
      next = g.node(o.node).children;
    }
    bool case1 = false;
    bool case2 = false;
    for (std::size_t k : next) {
      const GraphNode& n = g.node(k);
      if (pi.size() > 1 && alpha_equivalent(n.config, l1)) {
        if (!n.fold || !alpha_equivalent(g.node(n.fold->target).config, l1))
          return fail(to_string(n.config) + " after " + to_string(c) + " is not covered by the first L pivot");
        case1 = true;
      } else if (alpha_equivalent(n.config, entry)) {
        if (!n.fold || n.fold->target != g.root())
          return fail(to_string(n.config) + " after " + to_string(c) + " is not covered by the root");
        case2 = true;
      } else if (pi.size() == 1 && n.config.expr.kind() == ExprKind::True) {
        case1 = true;
      } else {
        return fail("unexpected configuration " + to_string(n.config) + " after " + to_string(c));
      }
    }
    if (case1_possible && !case1) return fail("no first-letter re-entry after " + to_string(c));
    if (case2_possible && !case2) return fail("no restart after " + to_string(c));
  }
  return pass();
}

CheckResult check_lemma23(const Specialization& s) {
  CheckResult a = check_lemma2(s);
  if (!a.ok) return a;
  return check_lemma3(s);
}

CheckResult check_theorem(const Specialization& s) {
  const ProcessGraph& g = s.scp.graph;
  if (s.scp.report.generalizations_attempted != 0)
    return fail(std::to_string(s.scp.report.generalizations_attempted) + " whistle events without a cover");
  if (g.diagnostic_count() != 0) return fail("diagnostic leaves present");
  if (!folds_verified(g)) return fail("a fold edge fails covers()");
  FirstPath fp;
  try {
    fp = first_path(g);
  } catch (const Error& e) {
    return fail(e.what());
  }
  std::set<std::size_t> on_path(fp.nodes.begin(), fp.nodes.end());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const GraphNode& n = g.node(i);
    if (!n.fold) continue;
    if (!on_path.count(n.fold->target))
      return fail("fold from node " + std::to_string(i) + " targets node " + std::to_string(n.fold->target) + " off the first path");
    // Departure: deepest first-path node on the source's root path.
    std::size_t departure = g.root();
    for (std::size_t a : g.ancestors(i))
      if (on_path.count(a)) {
        departure = a;
        break;
      }
    if (g.node(n.fold->target).depth > g.node(departure).depth)
      return fail("fold from node " + std::to_string(i) + " targets below its departure node");
  }
  return pass();
}

CheckResult check_structural(const Specialization& s) {
  if (!s.residual) return fail("no residual: " + s.residual_error);
  StructuralReport r = structural_report(*s.residual);
  if (r.constants_in_rhs != 0) return fail(std::to_string(r.constants_in_rhs) + " constants in rhs arguments");
  if (r.repeated_params_in_rhs != 0) return fail(std::to_string(r.repeated_params_in_rhs) + " rhs arguments repeat a variable");
  if (r.max_lhs_cons_depth > 1) return fail("an lhs inspects " + std::to_string(r.max_lhs_cons_depth) + " leading symbols");
  for (const auto& f : s.residual->program.functions())
    for (const auto& rule : f.rules)
      if (!rule.rhs.is_passive() && !(rule.rhs.is_call() && std::all_of(rule.rhs.args().begin(), rule.rhs.args().end(), [](const Expr& a) { return a.is_passive(); })))
        return fail("rhs of " + f.name + " is not in tail form");
  return pass();
}

CheckResult check_automaton(const Specialization& s) {
  if (!s.residual) return fail("no residual: " + s.residual_error);
  const ResidualProgram& rp = *s.residual;
  const std::string& pi = s.pattern;
  const std::size_t n = pi.size();
  std::map<std::string, std::size_t> state_of;
  std::vector<std::string> function_of(n);
  for (const auto& f : rp.functions) {
    if (!f.consuming) continue;
    std::optional<std::size_t> q;
    if (alpha_equivalent(f.config, entry_configuration(pi))) q = 0;
    for (std::size_t i = 1; i < n && !q; ++i)
      if (alpha_equivalent(f.config, lemma1_configuration(pi, i))) q = i;
    if (!q) return fail("consuming function " + f.name + " matches no automaton state: " + to_string(f.config));
    if (!function_of[*q].empty()) return fail("state " + std::to_string(*q) + " has two functions");
    function_of[*q] = f.name;
    state_of[f.name] = *q;
  }
  for (std::size_t q = 0; q < n; ++q)
    if (function_of[q].empty()) return fail("state " + std::to_string(q) + " has no function");

  Automaton dfa(pi);
  for (std::size_t q = 0; q < n; ++q) {
    for (char c : test_alphabet(pi)) {
      std::optional<std::size_t> reached;
      std::size_t calls = 0;
      EvalOptions opt;
      opt.fuel = 4 * n + 8;
      opt.observer = [&](const Expr& call, std::size_t) {
        if (calls++ == 0 || reached) return;
        auto it = state_of.find(call.name());
        if (it != state_of.end()) reached = it->second;
      };
      Outcome out = eval_call(rp.program, Expr::call(function_of[q], {Expr::word(std::string(1, c))}), opt);
      std::size_t got = reached ? *reached : (out.value ? n : std::size_t(-1));
      std::size_t want = dfa.delta(q, c);
      if (got != want)
        return fail("delta(" + std::to_string(q) + ",'" + std::string(1, c) + "') is " + std::to_string(want) +
                    " but residual goes to " + (got == std::size_t(-1) ? std::string("nowhere") : std::to_string(got)));
    }
  }
  return pass();
}

// ---------------------------------------------------------------------------
// Sweeps

namespace {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

template <class F>
void for_each_string(const std::string& pattern, const Corpus& corpus, F&& f) {
  const std::string alpha = test_alphabet(pattern);
  std::string y;
  for (std::size_t len = 0; len <= corpus.exhaustive_len; ++len) {
    std::vector<std::size_t> digits(len, 0);
    y.assign(len, alpha[0]);
    while (true) {
      f(y);
      std::size_t k = len;
      while (k > 0 && ++digits[k - 1] == alpha.size()) {
        digits[k - 1] = 0;
        y[k - 1] = alpha[0];
        --k;
      }
      if (k == 0) break;
      y[k - 1] = alpha[digits[k - 1]];
    }
  }
  std::mt19937_64 rng(corpus.seed ^ fnv1a(pattern));
  std::uniform_int_distribution<std::size_t> len_dist(0, corpus.random_max_len);
  std::uniform_int_distribution<std::size_t> letter(0, alpha.size() - 1);
  for (std::size_t i = 0; i < corpus.random_count; ++i) {
    y.resize(len_dist(rng));
    for (auto& ch : y) ch = alpha[letter(rng)];
    f(y);
  }
}

std::string verdicts(const std::string& y, bool naive, bool residual, bool kmp, bool brute) {
  auto b = [](bool v) { return v ? "T" : "F"; };
  return "y=\"" + y + "\" naive=" + b(naive) + " residual=" + b(residual) + " kmp=" + b(kmp) + " brute=" + b(brute);
}

}  // namespace

SweepStats sweep(const Specialization& s, const Corpus& corpus) {
  if (!s.residual) throw Error("no residual program for " + s.pattern + ": " + s.residual_error);
  SweepStats st;
  const std::string& pi = s.pattern;
  const std::size_t fuel = default_fuel_from_env();
  for_each_string(pi, corpus, [&](const std::string& y) {
    ++st.strings;
    Outcome naive = naive_search_outcome(pi, y);
    Outcome res = run_residual(*s.residual, y, fuel);
    SearchResult k = kmp_search(pi, y);
    bool brute = y.find(pi) != std::string::npos;
    if (naive.value != brute || res.value != brute || k.found != brute) {
      if (st.mismatches++ == 0) st.first_mismatch = verdicts(y, naive.value, res.value, k.found, brute);
    }
    if (res.steps > 2 * y.size() + pi.size() + 2) {
      if (st.bound_violations++ == 0)
        st.first_violation = "y=\"" + y + "\" residual steps " + std::to_string(res.steps);
    }
    if (k.comparisons > 2 * y.size()) st.max_kmp_comparisons_excess = std::max(st.max_kmp_comparisons_excess, k.comparisons - 2 * y.size());
    st.max_steps_ratio = std::max(st.max_steps_ratio, static_cast<double>(res.steps) / static_cast<double>(y.size() + 1));
  });
  return st;
}

CheckResult check_equivalence(const Specialization& s, const Corpus& corpus) {
  if (!s.residual) return fail("no residual: " + s.residual_error);
  SweepStats st = sweep(s, corpus);
  if (st.mismatches) return fail(std::to_string(st.mismatches) + " mismatches, first " + st.first_mismatch);
  return pass();
}

CheckResult check_linearity(const Specialization& s, const Corpus& corpus) {
  if (!s.residual) return fail("no residual: " + s.residual_error);
  SweepStats st = sweep(s, corpus);
  if (st.bound_violations) return fail(std::to_string(st.bound_violations) + " bound violations, first " + st.first_violation);
  if (st.max_kmp_comparisons_excess) return fail("kmp comparisons exceed 2|y|");
  return pass();
}

// ---------------------------------------------------------------------------
// Reports

bool VerificationReport::all_ok() const {
  return lemma1_ok && lemma2_ok && lemma3_ok && theorem_no_generalization_ok && structural_ok && equivalence_ok &&
         linearity_ok && automaton_ok;
}

VerificationReport verify_pattern(const std::string& pattern, const Corpus& corpus) {
  VerificationReport r;
  r.pattern = pattern;
  Specialization s;
  try {
    s = specialize(pattern);
  } catch (const std::exception& e) {
    r.failures.push_back(std::string("supercompile: ") + e.what());
    return r;
  }
  r.pivot_count = s.scp.report.pivots.size();
  r.node_count = s.scp.report.node_count;
  r.fold_count = s.scp.report.fold_count;
  r.generalizations = s.scp.report.generalizations_attempted;
  if (s.residual) {
    r.residual_function_count = s.residual->functions.size();
    r.consuming_function_count = s.residual->consuming_count();
  }

  auto record = [&](bool& flag, const char* name, const CheckResult& c) {
    flag = c.ok;
    if (!c.ok) r.failures.push_back(std::string(name) + ": " + c.detail);
  };
  auto guarded = [&](auto&& check) -> CheckResult {
    try {
      return check();
    } catch (const std::exception& e) {
      return fail(e.what());
    }
  };
  record(r.lemma1_ok, "lemma1", guarded([&] { return check_lemma1(s); }));
  record(r.lemma2_ok, "lemma2", guarded([&] { return check_lemma2(s); }));
  record(r.lemma3_ok, "lemma3", guarded([&] { return check_lemma3(s); }));
  record(r.theorem_no_generalization_ok, "theorem", guarded([&] { return check_theorem(s); }));
  record(r.structural_ok, "structural", guarded([&] { return check_structural(s); }));
  record(r.automaton_ok, "automaton", guarded([&] { return check_automaton(s); }));

  if (!s.residual) {
    record(r.equivalence_ok, "equivalence", fail("no residual: " + s.residual_error));
    record(r.linearity_ok, "linearity", fail("no residual: " + s.residual_error));
    return r;
  }
  try {
    SweepStats st = sweep(s, corpus);
    r.strings_tested = st.strings;
    r.max_steps_ratio = st.max_steps_ratio;
    record(r.equivalence_ok, "equivalence",
           st.mismatches ? fail(std::to_string(st.mismatches) + " mismatches, first " + st.first_mismatch) : pass());
    CheckResult lin = pass();
    if (st.bound_violations) lin = fail(std::to_string(st.bound_violations) + " bound violations, first " + st.first_violation);
    else if (st.max_kmp_comparisons_excess) lin = fail("kmp comparisons exceed 2|y|");
    record(r.linearity_ok, "linearity", lin);
    const std::string adversarial(200, pattern[0]);
    r.naive_steps_sample = naive_search_outcome(pattern, adversarial).steps;
    r.residual_steps_sample = run_residual(*s.residual, adversarial, default_fuel_from_env()).steps;
  } catch (const std::exception& e) {
    record(r.equivalence_ok, "equivalence", fail(e.what()));
    record(r.linearity_ok, "linearity", fail(e.what()));
  }
  return r;
}

std::string to_record(const VerificationReport& r) {
  auto b = [](bool v) { return v ? "ok" : "FAIL"; };
  char ratio[32];
  std::snprintf(ratio, sizeof ratio, "%.4f", r.max_steps_ratio);
  std::ostringstream os;
  os << "pattern=" << r.pattern << " lemma1=" << b(r.lemma1_ok) << " lemma2=" << b(r.lemma2_ok)
     << " lemma3=" << b(r.lemma3_ok) << " theorem=" << b(r.theorem_no_generalization_ok)
     << " structural=" << b(r.structural_ok) << " equivalence=" << b(r.equivalence_ok)
     << " linearity=" << b(r.linearity_ok) << " automaton=" << b(r.automaton_ok) << " pivots=" << r.pivot_count
     << " functions=" << r.residual_function_count << " consuming=" << r.consuming_function_count
     << " nodes=" << r.node_count << " folds=" << r.fold_count << " generalizations=" << r.generalizations
     << " strings=" << r.strings_tested << " max_steps_ratio=" << ratio << " naive_steps_sample=" << r.naive_steps_sample
     << " residual_steps_sample=" << r.residual_steps_sample;
  for (const auto& f : r.failures) os << "\n  failure: " << f;
  return os.str();
}

std::string summary(const std::vector<VerificationReport>& reports) {
  std::size_t ok = 0;
  double worst_ratio = 0.0;
  std::size_t max_nodes = 0;
  std::size_t total_gen = 0;
  for (const auto& r : reports) {
    if (r.all_ok()) ++ok;
    worst_ratio = std::max(worst_ratio, r.max_steps_ratio);
    max_nodes = std::max(max_nodes, r.node_count);
    total_gen += r.generalizations;
  }
  char ratio[32];
  std::snprintf(ratio, sizeof ratio, "%.4f", worst_ratio);
  std::ostringstream os;
  os << "summary patterns=" << reports.size() << " passed=" << ok << " failed=" << reports.size() - ok
     << " generalizations=" << total_gen << " max_nodes=" << max_nodes << " worst_steps_ratio=" << ratio;
  return os.str();
}

}  // namespace kmpscp
