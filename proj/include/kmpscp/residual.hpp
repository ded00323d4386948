#ifndef KMPSCP_RESIDUAL_HPP
#define KMPSCP_RESIDUAL_HPP

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "kmpscp/configs.hpp"
#include "kmpscp/interpreter.hpp"
#include "kmpscp/supercompiler.hpp"
#include "kmpscp/syntax.hpp"

namespace kmpscp {

class ResidualError : public Error {
 public:
  using Error::Error;
};

struct ResidualFunction {
  std::string name;
  std::size_t node = 0;
  Configuration config;
  /// Dynamic argument expressions of config, one per residual parameter.
  std::vector<Expr> signature;
  /// Driving the node reads a new cell of the input.
  bool consuming = false;
  std::string provenance;
};

struct ResidualProgram {
  Program program;
  std::string entry;
  /// Same order as program.functions().
  std::vector<ResidualFunction> functions;

  const ResidualFunction* find(const std::string& name) const;
  const ResidualFunction* for_node(std::size_t node) const;
  std::size_t consuming_count() const;
};

/**
 * Turns a closed process graph into a program.
 *
 * Every driven node becomes `F_k` (k in depth-first order). Its parameters
 * are the node's dynamic argument suffixes: what remains of each argument
 * after its literal prefix, deduplicated. A suffix like `#s.c:#y` stays one
 * list argument, so symbol parameters never appear bare.
 */
ResidualProgram residualize(const ProcessGraph& g);

/// Distinct non-ground tails of the call's arguments past their literal prefixes.
std::vector<Expr> dynamic_suffixes(const Expr& call);

/// F⌞'bcaca','abcabcaca','bca'++repeated-y⌟(y)
std::string provenance_label(const Configuration& c);

/// Program text with a provenance comment above each function; re-parses.
std::string render(const ResidualProgram& rp);

/// Calls the entry on a ground word.
Outcome run_residual(const ResidualProgram& rp, std::string_view y, std::size_t fuel);

struct StructuralReport {
  std::size_t constants_in_rhs = 0;
  std::size_t repeated_params_in_rhs = 0;
  std::size_t max_lhs_cons_depth = 0;

  friend bool operator==(const StructuralReport&, const StructuralReport&) = default;
};

StructuralReport structural_report(const Program& p);
StructuralReport structural_report(const ResidualProgram& rp);

}  // namespace kmpscp

#endif  // KMPSCP_RESIDUAL_HPP
