#include "kmpscp/configs.hpp"

#include <sstream>

namespace kmpscp {

std::string to_string(const Term& t) {
  return t.is_param ? "#s." + t.param : std::string{'\'', t.symbol, '\''};
}

// ---------------------------------------------------------------------------
// Restriction

Restriction::Restriction(std::initializer_list<Pair> pairs) {
  for (const auto& [a, b] : pairs) add(a, b);
}

Restriction Restriction::unsatisfiable() {
  Restriction r;
  r.unsat_ = true;
  return r;
}

void Restriction::add(const Term& a, const Term& b) {
  if (unsat_) return;
  if (a == b) {
    pairs_.clear();
    unsat_ = true;
    return;
  }
  if (!a.is_param && !b.is_param) return;
  pairs_.insert(a < b ? Pair{a, b} : Pair{b, a});
}

void Restriction::merge(const Restriction& other) {
  if (other.unsat_) {
    *this = unsatisfiable();
    return;
  }
  for (const auto& [a, b] : other.pairs_) add(a, b);
}

bool Restriction::contains(const Term& a, const Term& b) const {
  return pairs_.count(a < b ? Pair{a, b} : Pair{b, a}) > 0;
}

std::set<std::string> Restriction::params() const {
  std::set<std::string> out;
  for (const auto& [a, b] : pairs_) {
    if (a.is_param) out.insert(a.param);
    if (b.is_param) out.insert(b.param);
  }
  return out;
}

Restriction Restriction::restricted_to(const std::set<std::string>& live) const {
  if (unsat_) return *this;
  Restriction out;
  for (const auto& [a, b] : pairs_) {
    if (a.is_param && !live.count(a.param)) continue;
    if (b.is_param && !live.count(b.param)) continue;
    out.pairs_.insert({a, b});
  }
  return out;
}

std::string to_string(const Restriction& r) {
  if (!r.satisfiable()) return "⊥";
  std::string out;
  for (const auto& [a, b] : r.pairs()) {
    if (!out.empty()) out += ", ";
    // Parameter first reads better: #s.c≠'b'.
    out += b.is_param && !a.is_param ? to_string(b) + "≠" + to_string(a) : to_string(a) + "≠" + to_string(b);
  }
  return out;
}

bool satisfiable(const Restriction& r) { return r.satisfiable(); }

// ---------------------------------------------------------------------------
// Substitution

Atom apply(const Substitution& s, const Atom& a) {
  if (!a.is_param()) return a;
  auto it = s.symbols.find(a.name);
  return it == s.symbols.end() ? a : it->second;
}

Expr apply(const Substitution& s, const Expr& e) {
  if (s.empty()) return e;
  switch (e.kind()) {
    case ExprKind::ListParam: {
      auto it = s.lists.find(e.name());
      return it == s.lists.end() ? e : it->second;
    }
    case ExprKind::Cons:
      return Expr::cons(apply(s, e.head()), apply(s, e.tail()));
    case ExprKind::Call: {
      std::vector<Expr> args;
      for (const auto& a : e.args()) args.push_back(apply(s, a));
      return Expr::call(e.name(), std::move(args));
    }
    default:
      return e;
  }
}

namespace {

Term apply_term(const Substitution& s, const Term& t) {
  if (!t.is_param) return t;
  auto it = s.symbols.find(t.param);
  if (it == s.symbols.end()) return t;
  return it->second.is_literal() ? Term::literal(it->second.symbol) : Term::param_named(it->second.name);
}

}  // namespace

Restriction apply(const Substitution& s, const Restriction& r) {
  if (!r.satisfiable()) return r;
  Restriction out;
  for (const auto& [a, b] : r.pairs()) out.add(apply_term(s, a), apply_term(s, b));
  return out;
}

Substitution compose(const Substitution& first, const Substitution& then) {
  Substitution out;
  for (const auto& [k, v] : first.lists) out.lists.emplace(k, apply(then, v));
  for (const auto& [k, v] : first.symbols) out.symbols.emplace(k, apply(then, v));
  for (const auto& [k, v] : then.lists) out.lists.emplace(k, v);
  for (const auto& [k, v] : then.symbols) out.symbols.emplace(k, v);
  return out;
}

std::string to_string(const Substitution& s) {
  std::string out;
  for (const auto& [k, v] : s.lists) {
    if (!out.empty()) out += ", ";
    out += "#" + k + " -> " + to_string(v);
  }
  for (const auto& [k, v] : s.symbols) {
    if (!out.empty()) out += ", ";
    out += "#s." + k + " -> " + to_string(v);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Renaming

bool Renaming::injective() const {
  std::set<std::string> seen;
  for (const auto& [k, v] : lists)
    if (!seen.insert(v).second) return false;
  seen.clear();
  for (const auto& [k, v] : symbols)
    if (!seen.insert(v).second) return false;
  return true;
}

Substitution Renaming::as_substitution() const {
  Substitution s;
  for (const auto& [k, v] : lists) s.lists.emplace(k, Expr::list_param(v));
  for (const auto& [k, v] : symbols) s.symbols.emplace(k, Atom::param(v));
  return s;
}

std::string to_string(const Renaming& r) {
  std::string out;
  for (const auto& [k, v] : r.lists) {
    if (!out.empty()) out += ", ";
    out += "#" + k + " := #" + v;
  }
  for (const auto& [k, v] : r.symbols) {
    if (!out.empty()) out += ", ";
    out += "#s." + k + " := #s." + v;
  }
  return "{" + out + "}";
}

// ---------------------------------------------------------------------------
// Parameters

std::string to_string(const ParamRef& p) { return (p.is_symbol ? "#s." : "#") + p.name; }

namespace {

void collect_params(const Expr& e, std::vector<ParamRef>& out, std::set<ParamRef>& seen) {
  const Expr* cur = &e;
  while (cur->kind() == ExprKind::Cons) {
    if (cur->head().is_param()) {
      ParamRef p{true, cur->head().name};
      if (seen.insert(p).second) out.push_back(p);
    }
    cur = &cur->tail();
  }
  if (cur->kind() == ExprKind::ListParam) {
    ParamRef p{false, cur->name()};
    if (seen.insert(p).second) out.push_back(p);
  } else if (cur->kind() == ExprKind::Call) {
    for (const auto& a : cur->args()) collect_params(a, out, seen);
  }
}

}  // namespace

std::vector<ParamRef> params_in_order(const Expr& e) {
  std::vector<ParamRef> out;
  std::set<ParamRef> seen;
  collect_params(e, out, seen);
  return out;
}

std::set<std::string> symbol_params(const Expr& e) {
  std::set<std::string> out;
  for (const auto& p : params_in_order(e))
    if (p.is_symbol) out.insert(p.name);
  return out;
}

std::set<std::string> list_params(const Expr& e) {
  std::set<std::string> out;
  for (const auto& p : params_in_order(e))
    if (!p.is_symbol) out.insert(p.name);
  return out;
}

// ---------------------------------------------------------------------------
// Configurations

Configuration Configuration::normalized() const {
  return Configuration{expr, restriction.restricted_to(symbol_params(expr))};
}

std::string to_string(const Configuration& c) {
  std::string out = "⟨" + to_string(c.expr);
  if (!c.restriction.empty()) out += " ; " + to_string(c.restriction);
  return out + "⟩";
}

bool entails(const Restriction& r2, const Restriction& r1, const Renaming& sigma) {
  if (!r2.satisfiable()) return true;
  Restriction image = apply(sigma.as_substitution(), r1);
  if (!image.satisfiable()) return false;
  for (const auto& [a, b] : image.pairs())
    if (!r2.contains(a, b)) return false;
  return true;
}

namespace {

class RenamingBuilder {
 public:
  bool bind(std::map<std::string, std::string>& fwd, std::map<std::string, std::string>& back,
            const std::string& from, const std::string& to) {
    auto [it, fresh] = fwd.emplace(from, to);
    if (!fresh) return it->second == to;
    auto [bit, bfresh] = back.emplace(to, from);
    return bfresh || bit->second == from;
  }

  bool align(const Expr& a, const Expr& b) {
    const Expr* x = &a;
    const Expr* y = &b;
    while (true) {
      if (x->kind() != y->kind()) return false;
      switch (x->kind()) {
        case ExprKind::Nil:
        case ExprKind::True:
        case ExprKind::False:
          return true;
        case ExprKind::ListVar:
          return x->name() == y->name();
        case ExprKind::ListParam:
          return bind(result.lists, back_lists_, x->name(), y->name());
        case ExprKind::Call:
          if (x->name() != y->name() || x->args().size() != y->args().size()) return false;
          for (std::size_t i = 0; i < x->args().size(); ++i)
            if (!align(x->args()[i], y->args()[i])) return false;
          return true;
        case ExprKind::Cons: {
          const Atom& p = x->head();
          const Atom& q = y->head();
          if (p.kind != q.kind) return false;
          if (p.is_param()) {
            if (!bind(result.symbols, back_symbols_, p.name, q.name)) return false;
          } else if (!(p == q)) {
            return false;
          }
          x = &x->tail();
          y = &y->tail();
          break;
        }
      }
    }
  }

  Renaming result;

 private:
  std::map<std::string, std::string> back_lists_;
  std::map<std::string, std::string> back_symbols_;
};

}  // namespace

std::optional<Renaming> match_renaming(const Expr& from, const Expr& to) {
  RenamingBuilder b;
  if (!b.align(from, to)) return std::nullopt;
  return std::move(b.result);
}

std::optional<Renaming> covers(const Configuration& c1, const Configuration& c2) {
  auto sigma = match_renaming(c1.expr, c2.expr);
  if (!sigma) return std::nullopt;
  if (!entails(c2.restriction, c1.normalized().restriction, *sigma)) return std::nullopt;
  return sigma;
}

bool alpha_equivalent(const Configuration& a, const Configuration& b) {
  return covers(a, b).has_value() && covers(b, a).has_value();
}

// ---------------------------------------------------------------------------
// Ground instances

namespace {

bool bind_instance(const Expr& pattern, const Expr& ground, Assignment& out) {
  const Expr* p = &pattern;
  const Expr* g = &ground;
  while (true) {
    switch (p->kind()) {
      case ExprKind::ListParam: {
        auto w = g->as_word();
        if (!w) return false;
        auto [it, fresh] = out.lists.emplace(p->name(), *w);
        return fresh || it->second == *w;
      }
      case ExprKind::Cons: {
        if (g->kind() != ExprKind::Cons || !g->head().is_literal()) return false;
        const Atom& a = p->head();
        char c = g->head().symbol;
        if (a.is_param()) {
          auto [it, fresh] = out.symbols.emplace(a.name, c);
          if (!fresh && it->second != c) return false;
        } else if (!(a == g->head())) {
          return false;
        }
        p = &p->tail();
        g = &g->tail();
        break;
      }
      case ExprKind::Call:
        if (!g->is_call() || g->name() != p->name() || g->args().size() != p->args().size()) return false;
        for (std::size_t i = 0; i < p->args().size(); ++i)
          if (!bind_instance(p->args()[i], g->args()[i], out)) return false;
        return true;
      default:
        return *p == *g;
    }
  }
}

}  // namespace

std::optional<Assignment> match_instance(const Expr& pattern, const Expr& ground) {
  Assignment a;
  if (!bind_instance(pattern, ground, a)) return std::nullopt;
  return a;
}

Expr instantiate(const Expr& e, const Assignment& a) {
  Substitution s;
  for (const auto& [k, v] : a.lists) s.lists.emplace(k, Expr::word(v));
  for (const auto& [k, v] : a.symbols) s.symbols.emplace(k, Atom::literal(v));
  return apply(s, e);
}

bool holds(const Restriction& r, const Assignment& a) {
  if (!r.satisfiable()) return false;
  auto value = [&](const Term& t) -> std::optional<char> {
    if (!t.is_param) return t.symbol;
    auto it = a.symbols.find(t.param);
    if (it == a.symbols.end()) return std::nullopt;
    return it->second;
  };
  for (const auto& [x, y] : r.pairs()) {
    auto vx = value(x);
    auto vy = value(y);
    // Unassigned parameters can always be chosen fresh.
    if (vx && vy && *vx == *vy) return false;
  }
  return true;
}

}  // namespace kmpscp
