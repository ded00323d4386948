#include "kmpscp/residual.hpp"

#include <algorithm>
#include <set>

#include "kmpscp/interpreter.hpp"

namespace kmpscp {

const ResidualFunction* ResidualProgram::find(const std::string& name) const {
  for (const auto& f : functions)
    if (f.name == name) return &f;
  return nullptr;
}

const ResidualFunction* ResidualProgram::for_node(std::size_t node) const {
  for (const auto& f : functions)
    if (f.node == node) return &f;
  return nullptr;
}

std::size_t ResidualProgram::consuming_count() const {
  return static_cast<std::size_t>(std::count_if(functions.begin(), functions.end(), [](const ResidualFunction& f) { return f.consuming; }));
}

namespace {

const Expr& skip_literals(const Expr& e, std::string* prefix = nullptr) {
  const Expr* cur = &e;
  while (cur->kind() == ExprKind::Cons && cur->head().is_literal()) {
    if (prefix) *prefix += cur->head().symbol;
    cur = &cur->tail();
  }
  return *cur;
}

bool has_params(const Expr& e) { return !params_in_order(e).empty(); }

// Parameters become rule variables of the same name.
Expr to_vars(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::ListParam:
      return Expr::list_var(e.name());
    case ExprKind::Cons: {
      Atom h = e.head();
      if (h.is_param()) h = Atom::var(h.name);
      return Expr::cons(std::move(h), to_vars(e.tail()));
    }
    case ExprKind::Call: {
      std::vector<Expr> args;
      for (const auto& a : e.args()) args.push_back(to_vars(a));
      return Expr::call(e.name(), std::move(args));
    }
    default:
      return e;
  }
}

// Renames rule variables to y, y2, ... and c, c2, ... by first occurrence in the lhs.
class VarCanon {
 public:
  Rule run(const Rule& r) {
    Rule out;
    for (const auto& p : r.lhs) out.lhs.push_back(rename(p));
    out.rhs = rename(r.rhs);
    return out;
  }

 private:
  std::string name_for(std::map<std::string, std::string>& m, const std::string& base, const std::string& old) {
    auto it = m.find(old);
    if (it != m.end()) return it->second;
    std::string n = m.empty() ? base : base + std::to_string(m.size() + 1);
    m.emplace(old, n);
    return n;
  }

  Expr rename(const Expr& e) {
    switch (e.kind()) {
      case ExprKind::ListVar:
        return Expr::list_var(name_for(lists_, "y", e.name()));
      case ExprKind::Cons: {
        Atom h = e.head();
        if (h.is_var()) h = Atom::var(name_for(symbols_, "c", h.name));
        return Expr::cons(std::move(h), rename(e.tail()));
      }
      case ExprKind::Call: {
        std::vector<Expr> args;
        for (const auto& a : e.args()) args.push_back(rename(a));
        return Expr::call(e.name(), std::move(args));
      }
      default:
        return e;
    }
  }

  std::map<std::string, std::string> lists_;
  std::map<std::string, std::string> symbols_;
};

bool same_up_to_renaming(const std::vector<Expr>& a, const std::vector<Expr>& b) {
  Expr x = Expr::call("_", a);
  Expr y = Expr::call("_", b);
  return match_renaming(x, y).has_value() && match_renaming(y, x).has_value();
}

}  // namespace

std::vector<Expr> dynamic_suffixes(const Expr& call) {
  if (!call.is_call()) return {};
  std::vector<Expr> out;
  for (const auto& a : call.args()) {
    const Expr& tail = skip_literals(a);
    if (!has_params(tail)) continue;
    if (std::find(out.begin(), out.end(), tail) == out.end()) out.push_back(tail);
  }
  std::set<ParamRef> seen;
  for (const auto& s : out)
    for (const auto& p : params_in_order(s))
      if (!seen.insert(p).second) throw ResidualError("argument suffixes share parameter " + to_string(p) + " in " + to_string(call));
  return out;
}

std::string provenance_label(const Configuration& c) {
  if (!c.expr.is_call()) return to_string(c.expr);
  // Canonical names so the label does not depend on fresh-name counters.
  Renaming canon;
  for (const auto& p : params_in_order(c.expr)) {
    auto& m = p.is_symbol ? canon.symbols : canon.lists;
    std::string base = p.is_symbol ? "c" : "y";
    m.emplace(p.name, m.empty() ? base : base + std::to_string(m.size() + 1));
  }
  const Expr e = apply(canon.as_substitution(), c.expr);
  std::vector<Expr> seen;
  std::string parts;
  auto add = [&](const std::string& s) {
    if (!parts.empty()) parts += ',';
    parts += s;
  };
  for (const auto& a : e.args()) {
    std::string prefix;
    const Expr& tail = skip_literals(a, &prefix);
    std::string quoted = "'" + prefix + "'";
    if (!has_params(tail)) {
      add(quoted);
      continue;
    }
    std::string name = to_string(to_vars(tail));
    bool repeated = std::find(seen.begin(), seen.end(), tail) != seen.end();
    if (!repeated) seen.push_back(tail);
    if (!repeated && prefix.empty()) continue;
    add((prefix.empty() ? "" : quoted + "++") + (repeated ? "repeated-" : "") + name);
  }
  std::string sig;
  for (const auto& s : seen) sig += (sig.empty() ? "" : ",") + to_string(to_vars(s));
  return "F⌞" + parts + "⌟(" + sig + ")";
}

ResidualProgram residualize(const ProcessGraph& g) {
  if (g.diagnostic_count() > 0) throw ResidualError("graph has diagnostic leaves; it is not closed");
  ResidualProgram rp;
  std::map<std::size_t, std::size_t> index;
  for (std::size_t node : g.preorder_driven()) {
    ResidualFunction f;
    f.name = "F_" + std::to_string(rp.functions.size());
    f.node = node;
    f.config = g.node(node).config;
    f.signature = dynamic_suffixes(f.config.expr);
    f.consuming = g.node(node).consuming;
    f.provenance = provenance_label(f.config);
    index.emplace(node, rp.functions.size());
    rp.functions.push_back(std::move(f));
  }
  if (rp.functions.empty()) throw ResidualError("nothing to residualize: the root is not driven");

  auto call_to = [&](std::size_t target, const Substitution& s) {
    const ResidualFunction& t = rp.functions[index.at(target)];
    std::vector<Expr> args;
    for (const auto& x : t.signature) args.push_back(to_vars(apply(s, x)));
    return Expr::call(t.name, std::move(args));
  };

  std::vector<Function> functions;
  for (const auto& rf : rp.functions) {
    const GraphNode& n = g.node(rf.node);
    Function fn{rf.name, {}};
    std::vector<std::vector<Expr>> lhs_params;
    for (std::size_t c : n.children) {
      const GraphNode& child = g.node(c);
      const Branch& b = *child.incoming;
      std::vector<Expr> lhs;
      for (const auto& x : rf.signature) lhs.push_back(apply(b.narrowing.subst, x));
      std::set<std::string> lhs_symbols;
      for (const auto& p : params_in_order(Expr::call("_", lhs)))
        if (p.is_symbol) lhs_symbols.insert(p.name);

      for (const auto& [x, y] : b.narrowing.added.pairs()) {
        if (x.is_param == y.is_param) throw ResidualError("disequality between parameters is not expressible by rule order");
        const Term& p = x.is_param ? x : y;
        const Term& l = x.is_param ? y : x;
        if (!lhs_symbols.count(p.param)) throw ResidualError("disequality on " + p.param + " is invisible to the rule");
        Substitution pin;
        pin.symbols.emplace(p.param, Atom::literal(l.symbol));
        std::vector<Expr> pinned;
        for (const auto& e : lhs) pinned.push_back(apply(pin, e));
        bool shadowed = std::any_of(lhs_params.begin(), lhs_params.end(), [&](const auto& prev) { return same_up_to_renaming(prev, pinned); });
        if (!shadowed) throw ResidualError("disequality " + to_string(b.narrowing.added) + " in " + rf.name + " is not shadowed by an earlier rule");
      }

      Expr rhs;
      if (child.diagnostic) {
        throw ResidualError("diagnostic leaf");
      } else if (child.fold) {
        rhs = call_to(child.fold->target, child.fold->renaming.as_substitution());
      } else if (child.driven()) {
        rhs = call_to(c, Substitution{});
      } else {
        rhs = to_vars(child.config.expr);
      }
      Rule r;
      for (const auto& e : lhs) r.lhs.push_back(to_vars(e));
      r.rhs = rhs;
      fn.rules.push_back(VarCanon{}.run(r));
      lhs_params.push_back(std::move(lhs));
    }
    functions.push_back(std::move(fn));
  }
  rp.program = Program(std::move(functions));
  rp.entry = rp.functions.front().name;
  return rp;
}

std::string render(const ResidualProgram& rp) {
  std::string out;
  for (std::size_t i = 0; i < rp.functions.size(); ++i) {
    if (i) out += '\n';
    out += "-- " + rp.functions[i].provenance + "\n";
    out += render(rp.program.functions()[i]);
  }
  return out;
}

Outcome run_residual(const ResidualProgram& rp, std::string_view y, std::size_t fuel) {
  const ResidualFunction& f = rp.functions.front();
  if (f.signature.size() != 1) throw ResidualError("entry must take exactly the input string");
  const auto params = params_in_order(f.signature.front());
  if (params.size() != 1 || params.front().is_symbol) throw ResidualError("entry argument must be a single list parameter");
  return eval_call(rp.program, Expr::call(f.name, {Expr::word(y)}), fuel);
}

namespace {

void count_constants(const Expr& e, std::size_t& n) {
  const Expr* cur = &e;
  while (cur->kind() == ExprKind::Cons) {
    if (cur->head().is_literal()) ++n;
    cur = &cur->tail();
  }
  if (cur->is_nil()) ++n;
  if (cur->is_call())
    for (const auto& a : cur->args()) count_constants(a, n);
}

void collect_vars(const Expr& e, std::vector<std::string>& out) {
  const Expr* cur = &e;
  while (cur->kind() == ExprKind::Cons) {
    if (cur->head().is_var()) out.push_back("s." + cur->head().name);
    cur = &cur->tail();
  }
  if (cur->kind() == ExprKind::ListVar) out.push_back(cur->name());
  if (cur->is_call())
    for (const auto& a : cur->args()) collect_vars(a, out);
}

std::size_t cons_depth(const Expr& e) {
  std::size_t d = 0;
  for (const Expr* cur = &e; cur->kind() == ExprKind::Cons; cur = &cur->tail()) ++d;
  return d;
}

}  // namespace

StructuralReport structural_report(const Program& p) {
  StructuralReport r;
  for (const auto& f : p.functions()) {
    for (const auto& rule : f.rules) {
      for (const auto& l : rule.lhs) r.max_lhs_cons_depth = std::max(r.max_lhs_cons_depth, cons_depth(l));
      if (!rule.rhs.is_call()) continue;
      std::vector<std::vector<std::string>> per_arg;
      std::map<std::string, std::size_t> total;
      for (const auto& a : rule.rhs.args()) {
        count_constants(a, r.constants_in_rhs);
        per_arg.emplace_back();
        collect_vars(a, per_arg.back());
        for (const auto& v : per_arg.back()) ++total[v];
      }
      for (const auto& vars : per_arg)
        if (std::any_of(vars.begin(), vars.end(), [&](const std::string& v) { return total[v] > 1; })) ++r.repeated_params_in_rhs;
    }
  }
  return r;
}

StructuralReport structural_report(const ResidualProgram& rp) { return structural_report(rp.program); }

}  // namespace kmpscp
