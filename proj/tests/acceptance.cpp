// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "kmpscp/cli.hpp"
#include "kmpscp/harness.hpp"
#include "kmpscp/interpreter.hpp"
#include "kmpscp/kmp.hpp"

using namespace kmpscp;

namespace {

struct Outcome1 {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

int failures = 0;

void criterion(int id, const char* name, double limit_s, const std::function<Outcome1()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome1 o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.ok = false;
    o.detail = std::string("exception: ") + e.what();
  }
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool in_time = limit_s <= 0 || s < limit_s;
  bool pass = o.ok && in_time;
  if (!pass) ++failures;
  char limit[32] = "none";
  if (limit_s > 0) std::snprintf(limit, sizeof limit, "%.0f s", limit_s);
  std::printf("criterion %d %-28s %s  time=%.2f s limit=%s", id, name, pass ? "PASS" : "FAIL", s, limit);
  if (!in_time) std::printf("  over time");
  if (!o.detail.empty()) std::printf("  %s", o.detail.c_str());
  std::printf("\n");
  std::fflush(stdout);
}

std::vector<std::string> theorem_patterns() {
  std::vector<std::string> ps = binary_patterns(6);
  for (const char* p : {"aab", "ababa", "abcabcaca", "abcabcacab"}) ps.push_back(p);
  return ps;
}

}  // namespace

int main() {
  const Corpus corpus = Corpus::default_corpus(7);

  criterion(1, "failure tables", 1, [] {
    Outcome1 o;
    auto aab = failure_table("aab");
    o.require(std::vector<std::size_t>(aab.begin(), aab.begin() + 3) == std::vector<std::size_t>{0, 0, 1}, "aab");
    auto ababa = failure_table("ababa");
    o.require(std::vector<std::size_t>(ababa.begin(), ababa.begin() + 5) == std::vector<std::size_t>{0, 0, 0, 1, 2},
              "ababa");
    return o;
  });

  criterion(2, "first-path pivots", 10, [&] {
    Outcome1 o;
    for (const auto& p : corpus.patterns) {
      CheckResult c = check_lemma1(specialize(p));
      o.require(c.ok, p + ": " + c.detail);
    }
    Specialization s = specialize("abcabcaca");
    Configuration l4 = lemma1_configuration("abcabcaca", 4);
    bool found = false;
    for (const auto& pv : s.scp.report.pivots) found = found || alpha_equivalent(pv, l4);
    o.require(found, "abcabcaca lacks " + to_string(l4));
    o.detail = o.ok ? std::to_string(corpus.patterns.size()) + " patterns" : o.detail;
    return o;
  });

  criterion(3, "no generalization", 30, [] {
    Outcome1 o;
    auto ps = theorem_patterns();
    for (const auto& p : ps) {
      CheckResult c = check_theorem(specialize(p));
      o.require(c.ok, p + ": " + c.detail);
    }
    if (o.ok) o.detail = std::to_string(ps.size()) + " patterns";
    return o;
  });

  criterion(4, "four-way equivalence", 60, [&] {
    Outcome1 o;
    std::size_t strings = 0;
    for (const auto& p : corpus.patterns) {
      Specialization s = specialize(p);
      if (!s.residual) {
        o.require(false, p + ": no residual");
        continue;
      }
      SweepStats st = sweep(s, corpus);
      strings += st.strings;
      o.require(st.mismatches == 0, p + ": " + st.first_mismatch);
    }
    if (o.ok) o.detail = std::to_string(strings) + " strings";
    return o;
  });

  criterion(5, "residual structure", 5, [&] {
    Outcome1 o;
    for (const auto& p : corpus.patterns) {
      CheckResult c = check_structural(specialize(p));
      o.require(c.ok, p + ": " + c.detail);
    }
    return o;
  });

  criterion(6, "complexity contrast", 5, [&] {
    Outcome1 o;
    Corpus small = corpus;
    small.random_count = 200;
    for (const std::string p : {"aab", "aaab", "ababa", "abcabcacab"}) {
      CheckResult c = check_linearity(specialize(p), small);
      o.require(c.ok, p + ": " + c.detail);
    }
    Specialization s = specialize("aaab");
    auto measure = [&](std::size_t n) {
      std::string y(n, 'a');
      return std::pair{naive_search_outcome("aaab", y).steps, run_residual(*s.residual, y, default_fuel_from_env()).steps};
    };
    auto [n200, r200] = measure(200);
    auto [n400, r400] = measure(400);
    double factor = static_cast<double>(n200) / static_cast<double>(r200);
    double growth = static_cast<double>(n400 - r400) / static_cast<double>(n200 - r200);
    o.require(factor >= 2.0, "naive/residual factor below 2");
    o.require(growth >= 1.9, "gap growth below 1.9");
    char buf[160];
    std::snprintf(buf, sizeof buf, "naive=%zu residual=%zu factor=%.3f gap_growth=%.3f%s%s", n200, r200, factor, growth,
                  o.ok ? "" : "  ", o.ok ? "" : o.detail.c_str());
    o.detail = buf;
    return o;
  });

  criterion(7, "automaton isomorphism", 5, [&] {
    Outcome1 o;
    for (const auto& p : corpus.patterns) {
      CheckResult c = check_automaton(specialize(p));
      o.require(c.ok, p + ": " + c.detail);
    }
    return o;
  });

  criterion(8, "deterministic verify", 0, [] {
    Outcome1 o;
    auto once = [] {
      std::ostringstream out, err;
      int code = run_cli({"verify", "--corpus", "default", "--seed", "7"}, out, err);
      return std::pair{code, out.str()};
    };
    auto [c1, r1] = once();
    auto [c2, r2] = once();
    o.require(r1 == r2, "reports differ");
    o.require(c1 == kExitOk && c2 == kExitOk, "verify exited with failure");
    o.detail = std::to_string(r1.size()) + " bytes each" + (o.ok ? "" : ", " + o.detail);
    return o;
  });

  std::printf("acceptance %s: %d failing\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
