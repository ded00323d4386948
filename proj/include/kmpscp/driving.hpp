#ifndef KMPSCP_DRIVING_HPP
#define KMPSCP_DRIVING_HPP

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "kmpscp/configs.hpp"
#include "kmpscp/syntax.hpp"

namespace kmpscp {

/// Some ground instances of the configuration match no rule.
class StuckConfiguration : public Error {
 public:
  using Error::Error;
};

/// Driving hit a rule shape it cannot split on (e.g. repeated list variables).
class DrivingError : public Error {
 public:
  using Error::Error;
};

/// Edge label: how the parent's parameters were refined for this branch.
struct Narrowing {
  Substitution subst;
  /// Disequalities introduced on this branch (failure of earlier rules).
  Restriction added;
  std::size_t rule_index = 0;
  /// Parameters of the parent configuration; subst's domain is a subset.
  std::vector<ParamRef> domain;

  /// True if some list parameter gets a shape (Nil or Cons).
  bool narrows_list() const { return !subst.lists.empty(); }
};

std::string to_string(const Narrowing& n);

struct Branch {
  Narrowing narrowing;
  Configuration child;
  /// Interpreter steps this edge stands for (1 + compressed transients).
  std::size_t steps = 1;
  /// Configurations skipped by compression, oldest first.
  std::vector<Configuration> passed;
};

enum class NodeKind { LeafPassive, Transient, Pivot };

std::string to_string(NodeKind k);

/// Generates parameter names not used elsewhere in one driving session.
class NameSupply {
 public:
  void reserve(const Expr& e);
  std::string fresh_list();
  std::string fresh_symbol();

 private:
  std::set<std::string> lists_;
  std::set<std::string> symbols_;
  std::size_t next_list_ = 1;
  std::size_t next_symbol_ = 1;
};

/**
 * One driving session over a fixed program.
 *
 * Owns the fresh-name supply, so a Driver must not be shared across
 * threads; independent sessions are fine.
 */
class Driver {
 public:
  explicit Driver(const Program& program, std::size_t compress_limit = 10'000);

  const Program& program() const { return program_; }
  void reserve_names(const Configuration& c) { names_.reserve(c.expr); }

  /// All ways one rule can fire, in rule order; exhaustive and disjoint.
  std::vector<Branch> drive_step(const Configuration& c);

  /// Folds chains of single-branch steps into `b`.
  Branch compress(Branch b);

  NodeKind classify(const Configuration& c);

 private:
  const Program& program_;
  NameSupply names_;
  std::size_t compress_limit_;
};

}  // namespace kmpscp

#endif  // KMPSCP_DRIVING_HPP
