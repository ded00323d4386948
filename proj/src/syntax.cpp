#include "kmpscp/syntax.hpp"

#include <cctype>
#include <set>
#include <sstream>

namespace kmpscp {

SyntaxError::SyntaxError(const std::string& message, std::size_t line, std::size_t column)
    : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

bool is_symbol_char(char c) {
  auto u = static_cast<unsigned char>(c);
  if (!std::isprint(u) || std::isspace(u)) return false;
  switch (c) {
    case '\'': case '"': case ':': case ',': case '{': case '}':
    case '(': case ')': case '#': case '.': case ';': case '=':
      return false;
    default:
      return true;
  }
}

Atom Atom::literal(char c) { return Atom{AtomKind::Literal, c, {}}; }
Atom Atom::var(std::string name) { return Atom{AtomKind::SymbolVar, 0, std::move(name)}; }
Atom Atom::param(std::string name) { return Atom{AtomKind::SymbolParam, 0, std::move(name)}; }

// ---------------------------------------------------------------------------
// Expr

Expr Expr::cons(Atom head, Expr tail) {
  return Expr(std::make_shared<const Node>(Node{ExprKind::Cons, std::move(head), std::move(tail), {}, {}}));
}

Expr Expr::list_var(std::string name) {
  return Expr(std::make_shared<const Node>(Node{ExprKind::ListVar, {}, {}, std::move(name), {}}));
}

Expr Expr::list_param(std::string name) {
  return Expr(std::make_shared<const Node>(Node{ExprKind::ListParam, {}, {}, std::move(name), {}}));
}

Expr Expr::truth(bool value) {
  static const Expr t(std::make_shared<const Node>(Node{ExprKind::True, {}, {}, {}, {}}));
  static const Expr f(std::make_shared<const Node>(Node{ExprKind::False, {}, {}, {}, {}}));
  return value ? t : f;
}

Expr Expr::call(std::string function, std::vector<Expr> args) {
  return Expr(std::make_shared<const Node>(Node{ExprKind::Call, {}, {}, std::move(function), std::move(args)}));
}

Expr Expr::word(std::string_view letters) { return prefixed(letters, Expr{}); }

Expr Expr::prefixed(std::string_view letters, Expr tail) {
  Expr out = std::move(tail);
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) out = cons(Atom::literal(*it), std::move(out));
  return out;
}

ExprKind Expr::kind() const { return node_ ? node_->kind : ExprKind::Nil; }

const Atom& Expr::head() const {
  if (kind() != ExprKind::Cons) throw std::logic_error("head() of non-cons expression");
  return node_->head;
}

const Expr& Expr::tail() const {
  if (kind() != ExprKind::Cons) throw std::logic_error("tail() of non-cons expression");
  return node_->tail;
}

const std::string& Expr::name() const {
  static const std::string empty;
  return node_ ? node_->name : empty;
}

std::span<const Expr> Expr::args() const {
  if (kind() != ExprKind::Call) return {};
  return node_->args;
}

bool Expr::is_passive() const {
  const Expr* e = this;
  while (e->kind() == ExprKind::Cons) e = &e->tail();
  return e->kind() != ExprKind::Call;
}

bool Expr::is_ground_word() const {
  const Expr* e = this;
  while (e->kind() == ExprKind::Cons) {
    if (!e->head().is_literal()) return false;
    e = &e->tail();
  }
  return e->is_nil();
}

std::optional<std::string> Expr::as_word() const {
  std::string out;
  const Expr* e = this;
  while (e->kind() == ExprKind::Cons) {
    if (!e->head().is_literal()) return std::nullopt;
    out.push_back(e->head().symbol);
    e = &e->tail();
  }
  if (!e->is_nil()) return std::nullopt;
  return out;
}

bool operator==(const Expr& a, const Expr& b) {
  const Expr* x = &a;
  const Expr* y = &b;
  while (true) {
    if (x->node_ == y->node_) return true;
    if (x->kind() != y->kind()) return false;
    switch (x->kind()) {
      case ExprKind::Nil:
      case ExprKind::True:
      case ExprKind::False:
        return true;
      case ExprKind::ListVar:
      case ExprKind::ListParam:
        return x->name() == y->name();
      case ExprKind::Call: {
        if (x->name() != y->name() || x->args().size() != y->args().size()) return false;
        for (std::size_t i = 0; i < x->args().size(); ++i)
          if (!(x->args()[i] == y->args()[i])) return false;
        return true;
      }
      case ExprKind::Cons:
        if (!(x->head() == y->head())) return false;
        x = &x->tail();
        y = &y->tail();
        break;
    }
  }
}

// ---------------------------------------------------------------------------
// Program

Program::Program(std::vector<Function> functions) : functions_(std::move(functions)) {
  for (std::size_t i = 0; i < functions_.size(); ++i) {
    const auto& f = functions_[i];
    if (f.rules.empty()) throw ProgramError("function " + f.name + " has no rules");
    if (!index_.emplace(f.name, i).second) throw ProgramError("function " + f.name + " defined twice");
    for (const auto& r : f.rules)
      if (r.lhs.size() != f.arity()) throw ProgramError("arity mismatch within function " + f.name);
  }
}

const Function* Program::find(std::string_view name) const {
  auto it = index_.find(name);
  return it == index_.end() ? nullptr : &functions_[it->second];
}

const Function& Program::at(std::string_view name) const {
  if (const auto* f = find(name)) return *f;
  throw ProgramError("undefined function " + std::string(name));
}

// ---------------------------------------------------------------------------
// Lexer and parser

namespace {

enum class Tok { Name, SymVar, SymParam, ListParam, Char, Word, Colon, Comma, Equals, Semi, LBrace, RBrace, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_blank();
      Token t{Tok::End, {}, line_, col_};
      if (pos_ >= src_.size()) {
        out.push_back(t);
        return out;
      }
      char c = src_[pos_];
      switch (c) {
        case ':': advance(); t.kind = Tok::Colon; break;
        case ',': advance(); t.kind = Tok::Comma; break;
        case '=': advance(); t.kind = Tok::Equals; break;
        case ';': advance(); t.kind = Tok::Semi; break;
        case '{': advance(); t.kind = Tok::LBrace; break;
        case '}': advance(); t.kind = Tok::RBrace; break;
        case '(': advance(); t.kind = Tok::LParen; break;
        case ')': advance(); t.kind = Tok::RParen; break;
        case '\'': {
          advance();
          if (pos_ >= src_.size() || !is_symbol_char(src_[pos_])) fail("invalid symbol literal");
          t.text = std::string(1, src_[pos_]);
          advance();
          if (pos_ >= src_.size() || src_[pos_] != '\'') fail("unterminated symbol literal");
          advance();
          t.kind = Tok::Char;
          break;
        }
        case '"': {
          advance();
          while (pos_ < src_.size() && src_[pos_] != '"') {
            if (!is_symbol_char(src_[pos_])) fail("invalid character in word literal");
            t.text.push_back(src_[pos_]);
            advance();
          }
          if (pos_ >= src_.size()) fail("unterminated word literal");
          advance();
          t.kind = Tok::Word;
          break;
        }
        case '#': {
          advance();
          if (peek_symbol_prefix()) {
            advance();
            advance();
            t.kind = Tok::SymParam;
          } else {
            t.kind = Tok::ListParam;
          }
          t.text = name();
          break;
        }
        default:
          if (!std::isalpha(static_cast<unsigned char>(c))) fail(std::string("unexpected character '") + c + "'");
          if (peek_symbol_prefix()) {
            advance();
            advance();
            t.kind = Tok::SymVar;
          } else {
            t.kind = Tok::Name;
          }
          t.text = name();
      }
      out.push_back(std::move(t));
    }
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg, line_, col_); }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_blank() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '-') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  // "s." followed by a name start
  bool peek_symbol_prefix() const {
    return pos_ + 2 < src_.size() && src_[pos_] == 's' && src_[pos_ + 1] == '.' &&
           std::isalpha(static_cast<unsigned char>(src_[pos_ + 2]));
  }

  std::string name() {
    if (pos_ >= src_.size() || !std::isalpha(static_cast<unsigned char>(src_[pos_]))) fail("expected a name");
    std::string out;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
      out.push_back(src_[pos_]);
      advance();
    }
    return out;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

bool is_list_var_name(const std::string& s) { return !s.empty() && std::islower(static_cast<unsigned char>(s[0])); }

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(Lexer(src).run()) {}

  Program program() {
    std::vector<Function> fns;
    while (peek().kind != Tok::End) fns.push_back(funcdef());
    if (fns.empty()) fail(peek(), "expected a function definition");
    return Program(std::move(fns));
  }

  Expr expression() {
    Expr e = rhs();
    expect(Tok::End, "end of input");
    return e;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
  const Token& next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

  [[noreturn]] static void fail(const Token& t, const std::string& msg) { throw SyntaxError(msg, t.line, t.column); }

  const Token& expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail(peek(), std::string("expected ") + what);
    return next();
  }

  Function funcdef() {
    const Token& n = expect(Tok::Name, "function name");
    Function f{n.text, {}};
    expect(Tok::LBrace, "'{'");
    do {
      f.rules.push_back(rule());
    } while (peek().kind != Tok::RBrace);
    next();
    return f;
  }

  Rule rule() {
    Rule r;
    r.lhs.push_back(pattern());
    while (peek().kind == Tok::Comma) {
      next();
      r.lhs.push_back(pattern());
    }
    expect(Tok::Equals, "'=' or ','");
    r.rhs = rhs();
    expect(Tok::Semi, "';'");
    return r;
  }

  Expr pattern() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Name:
        next();
        if (t.text == "Nil") return Expr::nil();
        if (!is_list_var_name(t.text)) fail(t, "expected a pattern, got '" + t.text + "'");
        return Expr::list_var(t.text);
      case Tok::Word:
        next();
        return Expr::word(t.text);
      case Tok::Char:
      case Tok::SymVar: {
        next();
        Atom a = t.kind == Tok::Char ? Atom::literal(t.text[0]) : Atom::var(t.text);
        expect(Tok::Colon, "':'");
        return Expr::cons(std::move(a), pattern());
      }
      default:
        fail(t, "expected a pattern");
    }
  }

  Expr rhs() {
    const Token& t = peek();
    if (t.kind == Tok::Name && peek(1).kind == Tok::LParen) {
      next();
      next();
      std::vector<Expr> args;
      args.push_back(pexpr());
      while (peek().kind == Tok::Comma) {
        next();
        args.push_back(pexpr());
      }
      expect(Tok::RParen, "')' or ','");
      return Expr::call(t.text, std::move(args));
    }
    if (t.kind == Tok::Name && (t.text == "T" || t.text == "F")) {
      next();
      return Expr::truth(t.text == "T");
    }
    return pexpr();
  }

  Expr pexpr() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Name:
        next();
        if (t.text == "Nil") return Expr::nil();
        if (!is_list_var_name(t.text)) fail(t, "expected an expression, got '" + t.text + "'");
        return Expr::list_var(t.text);
      case Tok::ListParam:
        next();
        return Expr::list_param(t.text);
      case Tok::Word:
        next();
        return Expr::word(t.text);
      case Tok::Char:
      case Tok::SymVar:
      case Tok::SymParam: {
        next();
        Atom a = t.kind == Tok::Char     ? Atom::literal(t.text[0])
                 : t.kind == Tok::SymVar ? Atom::var(t.text)
                                         : Atom::param(t.text);
        expect(Tok::Colon, "':'");
        return Expr::cons(std::move(a), pexpr());
      }
      default:
        fail(t, "expected an expression");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

void collect_vars(const Expr& e, std::set<std::string>& syms, std::set<std::string>& lists, bool& has_params) {
  switch (e.kind()) {
    case ExprKind::Cons:
      if (e.head().is_var()) syms.insert(e.head().name);
      if (e.head().is_param()) has_params = true;
      collect_vars(e.tail(), syms, lists, has_params);
      break;
    case ExprKind::ListVar:
      lists.insert(e.name());
      break;
    case ExprKind::ListParam:
      has_params = true;
      break;
    case ExprKind::Call:
      for (const auto& a : e.args()) collect_vars(a, syms, lists, has_params);
      break;
    default:
      break;
  }
}

void validate(const Program& p) {
  for (const auto& f : p.functions()) {
    for (const auto& r : f.rules) {
      std::set<std::string> syms, lists;
      bool params = false;
      for (const auto& pat : r.lhs) collect_vars(pat, syms, lists, params);
      std::set<std::string> rsyms, rlists;
      collect_vars(r.rhs, rsyms, rlists, params);
      if (params) throw ProgramError("parameters are not allowed in rules of " + f.name);
      for (const auto& v : rsyms)
        if (!syms.count(v)) throw ProgramError("rhs variable s." + v + " unbound in " + f.name);
      for (const auto& v : rlists)
        if (!lists.count(v)) throw ProgramError("rhs variable " + v + " unbound in " + f.name);
      if (r.rhs.is_call()) {
        const Function* callee = p.find(r.rhs.name());
        if (!callee) throw ProgramError("call to undefined function " + r.rhs.name() + " in " + f.name);
        if (callee->arity() != r.rhs.args().size())
          throw ProgramError("call to " + callee->name + " with wrong arity in " + f.name);
      }
    }
  }
}

}  // namespace

Program parse_program(std::string_view text) {
  Program p = Parser(text).program();
  validate(p);
  return p;
}

Expr parse_expression(std::string_view text) { return Parser(text).expression(); }

// ---------------------------------------------------------------------------
// Printing

std::string to_string(const Atom& atom) {
  switch (atom.kind) {
    case AtomKind::Literal: return std::string{'\'', atom.symbol, '\''};
    case AtomKind::SymbolVar: return "s." + atom.name;
    case AtomKind::SymbolParam: return "#s." + atom.name;
  }
  return {};
}

namespace {

void print(std::ostream& os, const Expr& e, bool shorthand) {
  switch (e.kind()) {
    case ExprKind::Nil: os << "Nil"; return;
    case ExprKind::True: os << 'T'; return;
    case ExprKind::False: os << 'F'; return;
    case ExprKind::ListVar: os << e.name(); return;
    case ExprKind::ListParam: os << '#' << e.name(); return;
    case ExprKind::Call: {
      os << e.name() << '(';
      for (std::size_t i = 0; i < e.args().size(); ++i) {
        if (i) os << ", ";
        print(os, e.args()[i], shorthand);
      }
      os << ')';
      return;
    }
    case ExprKind::Cons: {
      const Expr* cur = &e;
      while (cur->kind() == ExprKind::Cons) {
        if (shorthand) {
          if (auto w = cur->as_word()) {
            os << '"' << *w << '"';
            return;
          }
        }
        os << to_string(cur->head()) << ':';
        cur = &cur->tail();
      }
      print(os, *cur, shorthand);
      return;
    }
  }
}

}  // namespace

std::string to_string(const Expr& expr) {
  std::ostringstream os;
  print(os, expr, true);
  return os.str();
}

std::string render(const Rule& rule) {
  std::ostringstream os;
  for (std::size_t i = 0; i < rule.lhs.size(); ++i) {
    if (i) os << ", ";
    print(os, rule.lhs[i], false);
  }
  os << " = ";
  print(os, rule.rhs, true);
  os << ';';
  return os.str();
}

std::string render(const Function& f) {
  std::ostringstream os;
  os << f.name << " {\n";
  for (const auto& r : f.rules) os << "  " << render(r) << '\n';
  os << "}\n";
  return os.str();
}

std::string render(const Program& program) {
  std::string out;
  for (const auto& f : program.functions()) out += render(f);
  return out;
}

}  // namespace kmpscp
