#include "kmpscp/supercompiler.hpp"

#include <algorithm>
#include <sstream>

namespace kmpscp {

std::size_t ProcessGraph::fold_count() const {
  return static_cast<std::size_t>(std::count_if(nodes_.begin(), nodes_.end(), [](const GraphNode& n) { return n.fold.has_value(); }));
}

std::size_t ProcessGraph::diagnostic_count() const {
  return static_cast<std::size_t>(std::count_if(nodes_.begin(), nodes_.end(), [](const GraphNode& n) { return n.diagnostic; }));
}

std::vector<std::size_t> ProcessGraph::ancestors(std::size_t i) const {
  std::vector<std::size_t> out;
  for (auto p = nodes_.at(i).parent; p; p = nodes_[*p].parent) out.push_back(*p);
  return out;
}

bool ProcessGraph::is_ancestor(std::size_t a, std::size_t b) const {
  for (auto p = nodes_.at(b).parent; p; p = nodes_[*p].parent)
    if (*p == a) return true;
  return false;
}

std::vector<std::size_t> ProcessGraph::preorder_driven() const {
  std::vector<std::size_t> out;
  if (nodes_.empty()) return out;
  std::vector<std::size_t> stack{0};
  while (!stack.empty()) {
    std::size_t i = stack.back();
    stack.pop_back();
    const GraphNode& n = nodes_[i];
    if (!n.driven()) continue;
    out.push_back(i);
    for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) stack.push_back(*it);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Embedding

namespace {

bool atom_embeds(const Atom& a, const Atom& b) {
  if (a.kind != b.kind) return false;
  return a.is_literal() ? a.symbol == b.symbol : true;
}

bool couple_terminal(const Expr& a, const Expr& b);

// Cons chains are sequences; greedy subsequence matching is exact for them.
bool embed_impl(const Expr& a, const Expr& b) {
  const Expr* x = &a;
  const Expr* y = &b;
  while (true) {
    if (y->kind() == ExprKind::Cons) {
      if (x->kind() == ExprKind::Cons && atom_embeds(x->head(), y->head())) x = &x->tail();
      y = &y->tail();
      continue;
    }
    if (x->kind() == ExprKind::Cons) {
      // Only a call can still host the remaining cells.
      if (!y->is_call()) return false;
      return std::any_of(y->args().begin(), y->args().end(), [&](const Expr& arg) { return embed_impl(*x, arg); });
    }
    if (couple_terminal(*x, *y)) return true;
    if (y->is_call())
      return std::any_of(y->args().begin(), y->args().end(), [&](const Expr& arg) { return embed_impl(*x, arg); });
    return false;
  }
}

bool couple_terminal(const Expr& a, const Expr& b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case ExprKind::ListParam:
      return true;
    case ExprKind::ListVar:
      return a.name() == b.name();
    case ExprKind::Call:
      if (a.name() != b.name() || a.args().size() != b.args().size()) return false;
      for (std::size_t i = 0; i < a.args().size(); ++i)
        if (!embed_impl(a.args()[i], b.args()[i])) return false;
      return true;
    default:
      return true;
  }
}

}  // namespace

bool embeds(const Expr& a, const Expr& b) { return embed_impl(a, b); }

bool embeds(const Configuration& c1, const Configuration& c2) {
  if (!c1.expr.is_call() || !c2.expr.is_call()) return embeds(c1.expr, c2.expr);
  return couple_terminal(c1.expr, c2.expr);
}

// ---------------------------------------------------------------------------
// Graph construction

class GraphBuilder {
 public:
  GraphBuilder(const Program& program, const ScpOptions& options) : driver_(program), options_(options) {}

  ScpResult run(const Configuration& entry) {
    if (!entry.is_active()) throw std::invalid_argument("entry configuration must be a call");
    if (!entry.restriction.satisfiable()) throw std::invalid_argument("entry restriction is unsatisfiable");
    driver_.reserve_names(entry);
    ScpResult out;
    auto& nodes = out.graph.nodes_;
    GraphNode root;
    root.config = entry.normalized();
    nodes.push_back(std::move(root));
    std::vector<std::size_t> stack{0};
    while (!stack.empty()) {
      std::size_t i = stack.back();
      stack.pop_back();
      if (nodes.size() > options_.node_budget)
        throw BudgetExceeded("node budget of " + std::to_string(options_.node_budget) + " exceeded");
      if (!nodes[i].config.is_active()) {
        nodes[i].kind = NodeKind::LeafPassive;
        continue;
      }
      const std::vector<std::size_t> ancestors = out.graph.ancestors(i);
      const std::string& head = nodes[i].config.expr.name();
      if (try_fold(nodes, i, ancestors, head)) continue;

      std::vector<Branch> branches = driver_.drive_step(nodes[i].config);
      GraphNode& n = nodes[i];
      n.kind = branches.size() == 1 ? NodeKind::Transient : NodeKind::Pivot;
      n.consuming = std::any_of(branches.begin(), branches.end(), [](const Branch& b) { return b.narrowing.narrows_list(); });

      if (whistle(nodes, i, ancestors, head)) {
        n.diagnostic = true;
        ++out.report.generalizations_attempted;
        continue;
      }
      if (n.kind == NodeKind::Pivot) {
        out.report.pivot_nodes.push_back(i);
        out.report.pivots.push_back(n.config);
      }
      std::vector<std::size_t> kids;
      for (auto& b : branches) {
        Branch cb = driver_.compress(std::move(b));
        GraphNode child;
        child.config = cb.child;
        child.parent = i;
        child.depth = nodes[i].depth + 1;
        child.incoming = std::move(cb);
        kids.push_back(nodes.size());
        nodes.push_back(std::move(child));
      }
      nodes[i].children = kids;
      for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
    }
    out.report.node_count = nodes.size();
    out.report.fold_count = out.graph.fold_count();
    return out;
  }

 private:
  static bool try_fold(std::vector<GraphNode>& nodes, std::size_t i, const std::vector<std::size_t>& ancestors,
                       const std::string& head) {
    for (std::size_t a : ancestors) {
      if (nodes[a].config.expr.name() != head) continue;
      if (auto sigma = covers(nodes[a].config, nodes[i].config)) {
        nodes[i].fold = FoldEdge{a, std::move(*sigma)};
        nodes[i].kind = NodeKind::LeafPassive;
        return true;
      }
    }
    return false;
  }

  bool whistle(const std::vector<GraphNode>& nodes, std::size_t i, const std::vector<std::size_t>& ancestors,
               const std::string& head) const {
    const bool consuming_only = options_.whistle == WhistleScope::Consuming;
    if (consuming_only && !nodes[i].consuming) return false;
    for (std::size_t a : ancestors) {
      if (nodes[a].config.expr.name() != head) continue;
      if (consuming_only && !nodes[a].consuming) continue;
      if (embeds(nodes[a].config, nodes[i].config)) return true;
    }
    return false;
  }

  Driver driver_;
  ScpOptions options_;
};

ScpResult supercompile(const Program& program, const Configuration& entry, const ScpOptions& options) {
  return GraphBuilder(program, options).run(entry);
}

FirstPath first_path(const ProcessGraph& g) {
  FirstPath p;
  std::size_t i = g.root();
  while (true) {
    p.nodes.push_back(i);
    const GraphNode& n = g.node(i);
    if (!n.driven()) break;
    i = n.children.front();
  }
  p.terminal = i;
  const GraphNode& t = g.node(i);
  if (t.fold || t.diagnostic || t.config.is_active())
    throw Error("first path ends at a non-passive node: " + to_string(t.config));
  return p;
}

std::vector<Configuration> first_path_pivots(const ProcessGraph& g) {
  std::vector<Configuration> out;
  for (std::size_t i : first_path(g).nodes)
    if (g.node(i).kind == NodeKind::Pivot) out.push_back(g.node(i).config);
  return out;
}

bool folds_verified(const ProcessGraph& g) {
  for (std::size_t i = 0; i < g.size(); ++i) {
    const GraphNode& n = g.node(i);
    if (!n.fold) continue;
    if (!g.is_ancestor(n.fold->target, i)) return false;
    auto sigma = covers(g.node(n.fold->target).config, n.config);
    if (!sigma || !(*sigma == n.fold->renaming)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Export

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string node_status(const GraphNode& n) {
  if (n.diagnostic) return "diagnostic";
  if (n.fold) return "fold";
  return to_string(n.kind);
}

}  // namespace

std::string to_dot(const ProcessGraph& g) {
  std::ostringstream os;
  os << "digraph scp {\n  node [shape=box, fontname=\"monospace\"];\n";
  for (std::size_t i = 0; i < g.size(); ++i) {
    const GraphNode& n = g.node(i);
    os << "  n" << i << " [label=\"" << i << " " << node_status(n) << "\\n" << dot_escape(to_string(n.config)) << "\"";
    if (i == g.root()) os << ", peripheries=2";
    if (n.kind == NodeKind::Pivot) os << ", style=bold";
    if (n.diagnostic) os << ", color=red";
    os << "];\n";
  }
  for (std::size_t i = 0; i < g.size(); ++i) {
    const GraphNode& n = g.node(i);
    for (std::size_t c : n.children) {
      const Branch& b = *g.node(c).incoming;
      os << "  n" << i << " -> n" << c << " [label=\"" << dot_escape(to_string(b.narrowing)) << "\"];\n";
    }
    if (n.fold)
      os << "  n" << i << " -> n" << n.fold->target << " [style=dashed, label=\"" << dot_escape(to_string(n.fold->renaming))
         << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

std::string to_text(const ProcessGraph& g) {
  std::ostringstream os;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const GraphNode& n = g.node(i);
    os << "node " << i << " " << node_status(n) << " " << to_string(n.config) << "\n";
  }
  for (std::size_t i = 0; i < g.size(); ++i) {
    const GraphNode& n = g.node(i);
    for (std::size_t c : n.children) {
      const Branch& b = *g.node(c).incoming;
      os << "edge " << i << " -> " << c << " " << to_string(b.narrowing) << " steps=" << b.steps << "\n";
    }
    if (n.fold) os << "fold " << i << " -> " << n.fold->target << " " << to_string(n.fold->renaming) << "\n";
  }
  return os.str();
}

}  // namespace kmpscp
