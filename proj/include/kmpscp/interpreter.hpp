#ifndef KMPSCP_INTERPRETER_HPP
#define KMPSCP_INTERPRETER_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kmpscp/syntax.hpp"

namespace kmpscp {

class EvalError : public Error {
 public:
  enum class Kind { NoRuleMatches, FuelExhausted, NonTailRhs, NotGround };
  EvalError(Kind kind, const std::string& message) : Error(message), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

inline constexpr std::size_t kDefaultFuel = 1'000'000;

/// Variable assignment produced by matching a rule's left-hand side.
struct Binding {
  std::vector<std::pair<std::string, Atom>> symbols;
  std::vector<std::pair<std::string, Expr>> lists;

  const Atom* symbol(std::string_view name) const;
  const Expr* list(std::string_view name) const;
  friend bool operator==(const Binding&, const Binding&) = default;
};

/// Ground matching of one rule against ground arguments. Repeated variables
/// must bind equal values.
std::optional<Binding> match_lhs(const Rule& rule, std::span<const Expr> args);

/// Replaces rule variables by their bound values.
Expr instantiate(const Expr& rhs, const Binding& binding);

struct Outcome {
  bool value = false;
  std::size_t steps = 0;
  friend bool operator==(const Outcome&, const Outcome&) = default;
};

struct RewriteStep {
  Expr result;
  std::size_t rule_index;
};

/// One rule application (first matching rule) on a ground call.
RewriteStep rewrite_once(const Program& program, const Expr& call);

struct EvalOptions {
  std::size_t fuel = kDefaultFuel;
  /// Called before each rule application with the current call and the rule index.
  std::function<void(const Expr&, std::size_t)> observer;
};

Outcome eval_call(const Program& program, const Expr& call, const EvalOptions& options = {});
Outcome eval_call(const Program& program, const Expr& call, std::size_t fuel);

/// Reads SCP_FUEL from the environment, falling back to kDefaultFuel.
std::size_t default_fuel_from_env();

/// The naive matcher shipped with the library (functions S and L).
const Program& naive_matcher();
std::string_view naive_matcher_source();

Outcome naive_search_outcome(std::string_view pattern, std::string_view string);
bool naive_search(std::string_view pattern, std::string_view string);

}  // namespace kmpscp

#endif  // KMPSCP_INTERPRETER_HPP
