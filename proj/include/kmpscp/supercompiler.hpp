#ifndef KMPSCP_SUPERCOMPILER_HPP
#define KMPSCP_SUPERCOMPILER_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "kmpscp/configs.hpp"
#include "kmpscp/driving.hpp"

namespace kmpscp {

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Which nodes consult the embedding whistle.
enum class WhistleScope {
  /// Only nodes whose drive narrows a list parameter, compared with
  /// ancestors of the same kind. Default.
  Consuming,
  /// Every active node against every same-head ancestor.
  All,
};

struct ScpOptions {
  std::size_t node_budget = 10'000;
  WhistleScope whistle = WhistleScope::Consuming;
};

struct FoldEdge {
  std::size_t target = 0;
  /// Maps the target's parameters to the folded node's.
  Renaming renaming;
};

struct GraphNode {
  Configuration config;
  NodeKind kind = NodeKind::LeafPassive;
  std::optional<std::size_t> parent;
  /// Edge from the parent (compressed); its child equals config.
  std::optional<Branch> incoming;
  std::vector<std::size_t> children;
  std::optional<FoldEdge> fold;
  bool diagnostic = false;
  /// Driving this node narrows a list parameter (reads input).
  bool consuming = false;
  std::size_t depth = 0;

  bool driven() const { return !children.empty(); }
};

class ProcessGraph {
 public:
  const std::vector<GraphNode>& nodes() const { return nodes_; }
  const GraphNode& node(std::size_t i) const { return nodes_.at(i); }
  std::size_t size() const { return nodes_.size(); }
  std::size_t root() const { return 0; }

  std::size_t fold_count() const;
  std::size_t diagnostic_count() const;
  /// Ancestors of i, nearest first.
  std::vector<std::size_t> ancestors(std::size_t i) const;
  bool is_ancestor(std::size_t a, std::size_t b) const;
  /// Driven nodes in depth-first branch order.
  std::vector<std::size_t> preorder_driven() const;

 private:
  friend class GraphBuilder;
  std::vector<GraphNode> nodes_;
};

struct ScpReport {
  std::size_t generalizations_attempted = 0;
  /// Node indices of pivots, in the order they were driven.
  std::vector<std::size_t> pivot_nodes;
  std::vector<Configuration> pivots;
  std::size_t node_count = 0;
  std::size_t fold_count = 0;
};

struct ScpResult {
  ProcessGraph graph;
  ScpReport report;
};

bool embeds(const Expr& a, const Expr& b);
bool embeds(const Configuration& c1, const Configuration& c2);

ScpResult supercompile(const Program& program, const Configuration& entry, const ScpOptions& options = {});

struct FirstPath {
  /// Nodes from the root to the terminal leaf, following first branches.
  std::vector<std::size_t> nodes;
  std::size_t terminal = 0;
};

FirstPath first_path(const ProcessGraph& g);
std::vector<Configuration> first_path_pivots(const ProcessGraph& g);

/// Re-checks covers() for every fold edge.
bool folds_verified(const ProcessGraph& g);

std::string to_dot(const ProcessGraph& g);
/// One line per node, then one line per edge.
std::string to_text(const ProcessGraph& g);

}  // namespace kmpscp

#endif  // KMPSCP_SUPERCOMPILER_HPP
