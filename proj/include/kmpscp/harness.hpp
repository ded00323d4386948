#ifndef KMPSCP_HARNESS_HPP
#define KMPSCP_HARNESS_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "kmpscp/residual.hpp"
#include "kmpscp/supercompiler.hpp"

namespace kmpscp {

struct Corpus {
  std::vector<std::string> patterns;
  std::size_t exhaustive_len = 8;
  std::size_t random_count = 1000;
  std::size_t random_max_len = 200;
  std::uint64_t seed = 7;

  /// Binary patterns up to length 6 plus the longer named examples.
  static Corpus default_corpus(std::uint64_t seed = 7);
};

/// All words over {a,b} of length 1..max_len, shorter first, then lexicographic.
std::vector<std::string> binary_patterns(std::size_t max_len);

/// A letter not in the pattern ('z' if possible).
char fresh_letter(std::string_view pattern);

/// Letters of the pattern in first-occurrence order plus fresh_letter().
std::string test_alphabet(std::string_view pattern);

/// Graph and residual for S(pattern, #y), built once and shared by the checks.
struct Specialization {
  std::string pattern;
  ScpResult scp;
  /// Empty when the graph is not closed.
  std::optional<ResidualProgram> residual;
  std::string residual_error;
};

Specialization specialize(const std::string& pattern, const ScpOptions& options = {});

/// S(pattern, #y) with empty restriction.
Configuration entry_configuration(std::string_view pattern);
/// L(p[i:], #y, p, p[1:i] ++ #y); i = |p| gives the transient that reaches T.
Configuration lemma1_configuration(std::string_view pattern, std::size_t i);

struct CheckResult {
  bool ok = false;
  std::string detail;
};

CheckResult check_lemma1(const Specialization& s);
CheckResult check_lemma2(const Specialization& s);
CheckResult check_lemma3(const Specialization& s);
/// Both of the above.
CheckResult check_lemma23(const Specialization& s);
CheckResult check_theorem(const Specialization& s);
CheckResult check_structural(const Specialization& s);
/// Residual consuming functions against the automaton states.
CheckResult check_automaton(const Specialization& s);

struct SweepStats {
  std::size_t strings = 0;
  std::size_t mismatches = 0;
  std::string first_mismatch;
  std::size_t bound_violations = 0;
  std::string first_violation;
  double max_steps_ratio = 0.0;
  std::size_t max_kmp_comparisons_excess = 0;
};

/// Runs every corpus string for the pattern through all four matchers.
SweepStats sweep(const Specialization& s, const Corpus& corpus);

CheckResult check_equivalence(const Specialization& s, const Corpus& corpus);
CheckResult check_linearity(const Specialization& s, const Corpus& corpus);

struct VerificationReport {
  std::string pattern;
  bool lemma1_ok = false;
  bool lemma2_ok = false;
  bool lemma3_ok = false;
  bool theorem_no_generalization_ok = false;
  bool structural_ok = false;
  bool equivalence_ok = false;
  bool linearity_ok = false;
  bool automaton_ok = false;

  std::size_t pivot_count = 0;
  std::size_t residual_function_count = 0;
  std::size_t consuming_function_count = 0;
  std::size_t node_count = 0;
  std::size_t fold_count = 0;
  std::size_t generalizations = 0;
  std::size_t strings_tested = 0;
  double max_steps_ratio = 0.0;
  std::size_t naive_steps_sample = 0;
  std::size_t residual_steps_sample = 0;
  std::vector<std::string> failures;

  bool all_ok() const;
};

VerificationReport verify_pattern(const std::string& pattern, const Corpus& corpus);

/// One line, fixed field order.
std::string to_record(const VerificationReport& r);
std::string summary(const std::vector<VerificationReport>& reports);

}  // namespace kmpscp

#endif  // KMPSCP_HARNESS_HPP
