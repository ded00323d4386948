#ifndef KMPSCP_CONFIGS_HPP
#define KMPSCP_CONFIGS_HPP

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "kmpscp/syntax.hpp"

namespace kmpscp {

/// Operand of a disequality: a symbol parameter or a symbol literal.
struct Term {
  bool is_param = false;
  std::string param;
  char symbol = 0;

  static Term param_named(std::string name) { return Term{true, std::move(name), 0}; }
  static Term literal(char c) { return Term{false, {}, c}; }

  friend bool operator==(const Term&, const Term&) = default;
  friend auto operator<=>(const Term&, const Term&) = default;
};

std::string to_string(const Term& t);

/**
 * Conjunction of disequalities between symbol parameters and literals.
 *
 * Always kept normalized: pairs are ordered, duplicates collapse, pairs of
 * distinct literals are dropped as trivially true, and a self-contradicting
 * pair turns the whole restriction into the unsatisfiable marker.
 * The alphabet is treated as unbounded.
 */
class Restriction {
 public:
  using Pair = std::pair<Term, Term>;

  Restriction() = default;
  Restriction(std::initializer_list<Pair> pairs);
  static Restriction unsatisfiable();

  void add(const Term& a, const Term& b);
  void merge(const Restriction& other);

  bool satisfiable() const { return !unsat_; }
  bool empty() const { return !unsat_ && pairs_.empty(); }
  bool contains(const Term& a, const Term& b) const;
  const std::set<Pair>& pairs() const { return pairs_; }
  std::set<std::string> params() const;

  /// Drops pairs mentioning parameters outside `live`.
  Restriction restricted_to(const std::set<std::string>& live) const;

  friend bool operator==(const Restriction&, const Restriction&) = default;

 private:
  std::set<Pair> pairs_;
  bool unsat_ = false;
};

std::string to_string(const Restriction& r);

bool satisfiable(const Restriction& r);

/// Parameter substitution; list parameters map to expressions, symbol
/// parameters to atoms (literal or parameter).
struct Substitution {
  std::map<std::string, Expr> lists;
  std::map<std::string, Atom> symbols;

  bool empty() const { return lists.empty() && symbols.empty(); }
  friend bool operator==(const Substitution&, const Substitution&) = default;
};

Expr apply(const Substitution& s, const Expr& e);
Atom apply(const Substitution& s, const Atom& a);
Restriction apply(const Substitution& s, const Restriction& r);
/// `then` after `first`: maps every key of `first` through `then`, and keeps
/// keys of `then` that `first` does not bind.
Substitution compose(const Substitution& first, const Substitution& then);
std::string to_string(const Substitution& s);

/// Injective, kind-preserving renaming of parameters.
struct Renaming {
  std::map<std::string, std::string> lists;
  std::map<std::string, std::string> symbols;

  bool injective() const;
  Substitution as_substitution() const;
  friend bool operator==(const Renaming&, const Renaming&) = default;
};

std::string to_string(const Renaming& r);

struct ParamRef {
  bool is_symbol = false;
  std::string name;

  friend bool operator==(const ParamRef&, const ParamRef&) = default;
  friend auto operator<=>(const ParamRef&, const ParamRef&) = default;
};

std::string to_string(const ParamRef& p);

/// Distinct parameters in first-occurrence (left-to-right) order.
std::vector<ParamRef> params_in_order(const Expr& e);
std::set<std::string> symbol_params(const Expr& e);
std::set<std::string> list_params(const Expr& e);

/// Expression plus negative information about its symbol parameters.
struct Configuration {
  Expr expr;
  Restriction restriction;

  bool is_active() const { return expr.is_call(); }
  /// Drops disequalities over parameters that no longer occur in expr.
  Configuration normalized() const;

  friend bool operator==(const Configuration&, const Configuration&) = default;
};

/// Text form `⟨expr ; t≠t, ...⟩`.
std::string to_string(const Configuration& c);

/// R2 ⇒ σ(R1) over an unbounded alphabet.
bool entails(const Restriction& r2, const Restriction& r1, const Renaming& sigma);

/// The renaming σ with σ(from) = to, if any.
std::optional<Renaming> match_renaming(const Expr& from, const Expr& to);

/// σ such that σ(c1.expr) = c2.expr and c2's restriction entails σ(c1's).
std::optional<Renaming> covers(const Configuration& c1, const Configuration& c2);

/// Equal up to a bijective renaming, restrictions included.
bool alpha_equivalent(const Configuration& a, const Configuration& b);

/// Ground values for parameters.
struct Assignment {
  std::map<std::string, std::string> lists;
  std::map<std::string, char> symbols;

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

/// Matches a parameterized expression against a ground one, treating
/// parameters as pattern variables (repeated ones must agree).
std::optional<Assignment> match_instance(const Expr& pattern, const Expr& ground);
Expr instantiate(const Expr& e, const Assignment& a);
bool holds(const Restriction& r, const Assignment& a);

}  // namespace kmpscp

#endif  // KMPSCP_CONFIGS_HPP
