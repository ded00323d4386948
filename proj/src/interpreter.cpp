#include "kmpscp/interpreter.hpp"

#include <cstdlib>
#include <stdexcept>

namespace kmpscp {

namespace {

constexpr std::string_view kNaiveSource = R"(-- Substring search by restarting after every mismatch.
S {
  s.a:p, s.a:y = L(s.a:p, s.a:y, s.a:p, y);
  s.a:p, s.b:y = S(s.a:p, y);
  p, Nil = F;
}

-- L(rest of pattern, rest of string, whole pattern, restart point)
L {
  s.a:p, s.a:y, q, z = L(p, y, q, z);
  s.a:p, s.b:y, q, z = S(q, z);
  s.a:p, Nil, q, z = S(q, z);
  Nil, y, q, z = T;
}
)";

bool match(const Expr& pat, const Expr& val, Binding& b) {
  const Expr* p = &pat;
  const Expr* v = &val;
  while (true) {
    switch (p->kind()) {
      case ExprKind::Nil:
        return v->is_nil();
      case ExprKind::ListVar: {
        if (const Expr* bound = b.list(p->name())) return *bound == *v;
        b.lists.emplace_back(p->name(), *v);
        return true;
      }
      case ExprKind::Cons: {
        if (v->kind() != ExprKind::Cons) return false;
        const Atom& pa = p->head();
        const Atom& va = v->head();
        if (pa.is_literal()) {
          if (!(va == pa)) return false;
        } else if (const Atom* bound = b.symbol(pa.name)) {
          if (!(*bound == va)) return false;
        } else {
          b.symbols.emplace_back(pa.name, va);
        }
        p = &p->tail();
        v = &v->tail();
        break;
      }
      default:
        throw EvalError(EvalError::Kind::NotGround, "unsupported pattern " + to_string(*p));
    }
  }
}

void require_ground(const Expr& e) {
  const Expr* cur = &e;
  while (cur->kind() == ExprKind::Cons) {
    if (!cur->head().is_literal())
      throw EvalError(EvalError::Kind::NotGround, "argument is not ground: " + to_string(e));
    cur = &cur->tail();
  }
  if (!cur->is_nil() && !cur->is_truth())
    throw EvalError(EvalError::Kind::NotGround, "argument is not ground: " + to_string(e));
}

bool contains_call(const Expr& e) { return !e.is_passive(); }

RewriteStep rewrite_unchecked(const Function& f, const Expr& call) {
  for (std::size_t i = 0; i < f.rules.size(); ++i) {
    const Rule& r = f.rules[i];
    if (auto b = match_lhs(r, call.args())) {
      if (r.rhs.is_call()) {
        for (const auto& a : r.rhs.args())
          if (contains_call(a))
            throw EvalError(EvalError::Kind::NonTailRhs, "nested call in rule of " + f.name);
      } else if (!r.rhs.is_passive()) {
        throw EvalError(EvalError::Kind::NonTailRhs, "nested call in rule of " + f.name);
      }
      return {instantiate(r.rhs, *b), i};
    }
  }
  throw EvalError(EvalError::Kind::NoRuleMatches, "no rule of " + f.name + " matches " + to_string(call));
}

const Function& checked_callee(const Program& program, const Expr& call) {
  if (!call.is_call()) throw std::invalid_argument("expected a call");
  const Function& f = program.at(call.name());
  if (call.args().size() != f.arity())
    throw std::invalid_argument("arity mismatch in call to " + f.name);
  for (const auto& a : call.args()) require_ground(a);
  return f;
}

}  // namespace

const Atom* Binding::symbol(std::string_view name) const {
  for (const auto& [n, a] : symbols)
    if (n == name) return &a;
  return nullptr;
}

const Expr* Binding::list(std::string_view name) const {
  for (const auto& [n, e] : lists)
    if (n == name) return &e;
  return nullptr;
}

std::optional<Binding> match_lhs(const Rule& rule, std::span<const Expr> args) {
  if (args.size() != rule.lhs.size())
    throw std::invalid_argument("arity mismatch: rule expects " + std::to_string(rule.lhs.size()) +
                                " arguments, got " + std::to_string(args.size()));
  Binding b;
  for (std::size_t i = 0; i < args.size(); ++i)
    if (!match(rule.lhs[i], args[i], b)) return std::nullopt;
  return b;
}

Expr instantiate(const Expr& rhs, const Binding& binding) {
  switch (rhs.kind()) {
    case ExprKind::ListVar: {
      const Expr* v = binding.list(rhs.name());
      if (!v) throw EvalError(EvalError::Kind::NotGround, "unbound variable " + rhs.name());
      return *v;
    }
    case ExprKind::Cons: {
      Atom head = rhs.head();
      if (head.is_var()) {
        const Atom* v = binding.symbol(head.name);
        if (!v) throw EvalError(EvalError::Kind::NotGround, "unbound variable s." + head.name);
        head = *v;
      }
      return Expr::cons(std::move(head), instantiate(rhs.tail(), binding));
    }
    case ExprKind::Call: {
      std::vector<Expr> args;
      args.reserve(rhs.args().size());
      for (const auto& a : rhs.args()) args.push_back(instantiate(a, binding));
      return Expr::call(rhs.name(), std::move(args));
    }
    default:
      return rhs;
  }
}

RewriteStep rewrite_once(const Program& program, const Expr& call) {
  return rewrite_unchecked(checked_callee(program, call), call);
}

Outcome eval_call(const Program& program, const Expr& call, const EvalOptions& options) {
  // Rules are validated, so a ground call only ever rewrites to ground terms.
  const Function* f = &checked_callee(program, call);
  Expr cur = call;
  std::size_t steps = 0;
  while (cur.is_call()) {
    if (steps >= options.fuel)
      throw EvalError(EvalError::Kind::FuelExhausted, "fuel exhausted after " + std::to_string(steps) + " steps");
    if (f->name != cur.name()) f = &program.at(cur.name());
    RewriteStep s = rewrite_unchecked(*f, cur);
    if (options.observer) options.observer(cur, s.rule_index);
    cur = std::move(s.result);
    ++steps;
  }
  if (!cur.is_truth()) throw EvalError(EvalError::Kind::NoRuleMatches, "evaluation ended in non-boolean " + to_string(cur));
  return {cur.kind() == ExprKind::True, steps};
}

Outcome eval_call(const Program& program, const Expr& call, std::size_t fuel) {
  EvalOptions o;
  o.fuel = fuel;
  return eval_call(program, call, o);
}

std::size_t default_fuel_from_env() {
  if (const char* v = std::getenv("SCP_FUEL")) {
    char* end = nullptr;
    unsigned long long n = std::strtoull(v, &end, 10);
    if (end != v && *end == '\0' && n > 0) return static_cast<std::size_t>(n);
  }
  return kDefaultFuel;
}

std::string_view naive_matcher_source() { return kNaiveSource; }

const Program& naive_matcher() {
  static const Program p = parse_program(kNaiveSource);
  return p;
}

Outcome naive_search_outcome(std::string_view pattern, std::string_view string) {
  if (pattern.empty()) throw std::invalid_argument("pattern must be nonempty");
  return eval_call(naive_matcher(), Expr::call("S", {Expr::word(pattern), Expr::word(string)}));
}

bool naive_search(std::string_view pattern, std::string_view string) {
  return naive_search_outcome(pattern, string).value;
}

}  // namespace kmpscp
