#include "kmpscp/driving.hpp"

#include <functional>
#include <variant>

#include "kmpscp/interpreter.hpp"

namespace kmpscp {

std::string to_string(const Narrowing& n) {
  std::string out = "rule " + std::to_string(n.rule_index + 1);
  if (!n.subst.empty()) out += ": " + to_string(n.subst);
  if (!n.added.empty()) out += (n.subst.empty() ? ": " : "; ") + to_string(n.added);
  return out;
}

std::string to_string(NodeKind k) {
  switch (k) {
    case NodeKind::LeafPassive: return "leaf";
    case NodeKind::Transient: return "transient";
    case NodeKind::Pivot: return "pivot";
  }
  return "?";
}

void NameSupply::reserve(const Expr& e) {
  for (const auto& p : params_in_order(e)) (p.is_symbol ? symbols_ : lists_).insert(p.name);
}

std::string NameSupply::fresh_list() {
  while (true) {
    std::string n = "y" + std::to_string(next_list_++);
    if (lists_.insert(n).second) return n;
  }
}

std::string NameSupply::fresh_symbol() {
  while (true) {
    std::string n = "c" + std::to_string(next_symbol_++);
    if (symbols_.insert(n).second) return n;
  }
}

namespace {

// A region of the input space still waiting for a rule.
struct Piece {
  Substitution subst;
  std::vector<Expr> args;
  Restriction restriction;
};

struct Case {
  Substitution delta;
  Restriction added;
};

struct Matched {
  Binding binding;
};
struct Failed {};
using Split = std::vector<Case>;
using MatchResult = std::variant<Matched, Failed, Split>;

Term term_of(const Atom& a) { return a.is_param() ? Term::param_named(a.name) : Term::literal(a.symbol); }

// Compares an atom the rule demands with the atom the configuration has.
std::variant<bool, Split> compare_atoms(const Atom& want, const Atom& have, const Restriction& r) {
  if (want.is_literal() && have.is_literal()) return want == have;
  if (want.is_param() && have.is_param() && want.name == have.name) return true;
  if (r.contains(term_of(want), term_of(have))) return false;
  Split s(2);
  if (have.is_param()) {
    s[0].delta.symbols.emplace(have.name, want);
  } else {
    s[0].delta.symbols.emplace(want.name, have);
  }
  s[1].added.add(term_of(want), term_of(have));
  return s;
}

class SymbolicMatcher {
 public:
  SymbolicMatcher(NameSupply& names, const Restriction& r) : names_(names), r_(r) {}

  MatchResult run(const Rule& rule, const std::vector<Expr>& args) {
    for (std::size_t i = 0; i < args.size(); ++i) {
      MatchResult m = match(rule.lhs[i], args[i]);
      if (!std::holds_alternative<Matched>(m)) return m;
    }
    return Matched{std::move(b_)};
  }

 private:
  MatchResult match(const Expr& pat, const Expr& val) {
    const Expr* p = &pat;
    const Expr* v = &val;
    while (true) {
      if (v->is_call()) throw DrivingError("cannot drive a nested call: " + to_string(*v));
      switch (p->kind()) {
        case ExprKind::ListVar:
          if (const Expr* bound = b_.list(p->name())) {
            if (*bound == *v) return Matched{};
            throw DrivingError("repeated list variable " + p->name() + " needs list equality");
          }
          b_.lists.emplace_back(p->name(), *v);
          return Matched{};
        case ExprKind::Nil:
          if (v->is_nil()) return Matched{};
          if (v->kind() == ExprKind::ListParam) return split_list(v->name());
          return Failed{};
        case ExprKind::Cons: {
          if (v->kind() == ExprKind::ListParam) return split_list(v->name());
          if (v->kind() != ExprKind::Cons) return Failed{};
          const Atom& pa = p->head();
          const Atom& va = v->head();
          if (pa.is_var() && !b_.symbol(pa.name)) {
            b_.symbols.emplace_back(pa.name, va);
          } else {
            const Atom& want = pa.is_var() ? *b_.symbol(pa.name) : pa;
            auto c = compare_atoms(want, va, r_);
            if (auto* s = std::get_if<Split>(&c)) return std::move(*s);
            if (!std::get<bool>(c)) return Failed{};
          }
          p = &p->tail();
          v = &v->tail();
          break;
        }
        default:
          throw DrivingError("unsupported pattern " + to_string(*p));
      }
    }
  }

  Split split_list(const std::string& name) {
    Split s(2);
    s[0].delta.lists.emplace(name, Expr::cons(Atom::param(names_.fresh_symbol()), Expr::list_param(names_.fresh_list())));
    s[1].delta.lists.emplace(name, Expr::nil());
    return s;
  }

  NameSupply& names_;
  const Restriction& r_;
  Binding b_;
};

Substitution restrict_domain(const Substitution& s, const std::vector<ParamRef>& domain) {
  Substitution out;
  for (const auto& p : domain) {
    if (p.is_symbol) {
      if (auto it = s.symbols.find(p.name); it != s.symbols.end()) out.symbols.insert(*it);
    } else if (auto it = s.lists.find(p.name); it != s.lists.end()) {
      out.lists.insert(*it);
    }
  }
  return out;
}

Restriction difference(const Restriction& now, const Restriction& before) {
  Restriction out;
  for (const auto& [a, b] : now.pairs())
    if (!before.contains(a, b)) out.add(a, b);
  return out;
}

}  // namespace

Driver::Driver(const Program& program, std::size_t compress_limit)
    : program_(program), compress_limit_(compress_limit) {}

std::vector<Branch> Driver::drive_step(const Configuration& c) {
  if (!c.is_active()) throw std::invalid_argument("cannot drive a passive configuration");
  names_.reserve(c.expr);
  const Function& f = program_.at(c.expr.name());
  if (c.expr.args().size() != f.arity()) throw DrivingError("arity mismatch in call to " + f.name);
  const std::vector<ParamRef> domain = params_in_order(c.expr);

  std::vector<Branch> out;
  std::vector<Piece> pending{Piece{{}, {c.expr.args().begin(), c.expr.args().end()}, c.restriction}};

  for (std::size_t ri = 0; ri < f.rules.size() && !pending.empty(); ++ri) {
    const Rule& rule = f.rules[ri];
    std::vector<Piece> failed;
    std::function<void(Piece)> process = [&](Piece piece) {
      SymbolicMatcher m(names_, piece.restriction);
      MatchResult res = m.run(rule, piece.args);
      if (auto* ok = std::get_if<Matched>(&res)) {
        Branch b;
        b.narrowing.subst = restrict_domain(piece.subst, domain);
        b.narrowing.added = difference(piece.restriction, apply(piece.subst, c.restriction));
        b.narrowing.rule_index = ri;
        b.narrowing.domain = domain;
        b.child = Configuration{instantiate(rule.rhs, ok->binding), piece.restriction}.normalized();
        out.push_back(std::move(b));
      } else if (std::holds_alternative<Failed>(res)) {
        failed.push_back(std::move(piece));
      } else {
        for (auto& cs : std::get<Split>(res)) {
          Piece sub;
          sub.subst = compose(piece.subst, cs.delta);
          for (const auto& a : piece.args) sub.args.push_back(apply(cs.delta, a));
          sub.restriction = apply(cs.delta, piece.restriction);
          sub.restriction.merge(cs.added);
          if (sub.restriction.satisfiable()) process(std::move(sub));
        }
      }
    };
    for (auto& piece : pending) process(std::move(piece));
    pending = std::move(failed);
  }

  if (!pending.empty()) {
    const Piece& p = pending.front();
    std::vector<Expr> args = p.args;
    throw StuckConfiguration("no rule covers " + to_string(Configuration{Expr::call(f.name, std::move(args)), p.restriction}) +
                             " from " + to_string(c));
  }
  if (out.empty()) throw StuckConfiguration("no rule applies to " + to_string(c));
  return out;
}

Branch Driver::compress(Branch b) {
  std::size_t rounds = 0;
  while (b.child.is_active()) {
    std::vector<Branch> next = drive_step(b.child);
    if (next.size() != 1) break;
    if (++rounds > compress_limit_) throw DrivingError("compression limit reached at " + to_string(b.child));
    Branch& n = next.front();
    b.passed.push_back(b.child);
    Restriction added = apply(n.narrowing.subst, b.narrowing.added);
    added.merge(n.narrowing.added);
    b.narrowing.subst = restrict_domain(compose(b.narrowing.subst, n.narrowing.subst), b.narrowing.domain);
    b.narrowing.added = std::move(added);
    b.steps += n.steps;
    b.child = std::move(n.child);
  }
  return b;
}

NodeKind Driver::classify(const Configuration& c) {
  if (!c.is_active()) return NodeKind::LeafPassive;
  return drive_step(c).size() == 1 ? NodeKind::Transient : NodeKind::Pivot;
}

}  // namespace kmpscp
