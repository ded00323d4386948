#ifndef KMPSCP_SYNTAX_HPP
#define KMPSCP_SYNTAX_HPP

#include <compare>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <map>
#include <vector>

namespace kmpscp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Well-formedness violations detected after parsing (arity, binding, ...).
class ProgramError : public Error {
 public:
  using Error::Error;
};

/// True for characters usable as a symbol literal.
bool is_symbol_char(char c);

enum class AtomKind { Literal, SymbolVar, SymbolParam };

/// A symbol position: literal, rule variable (s.x) or parameter (#s.x).
struct Atom {
  AtomKind kind = AtomKind::Literal;
  char symbol = 0;
  std::string name;

  static Atom literal(char c);
  static Atom var(std::string name);
  static Atom param(std::string name);

  bool is_literal() const { return kind == AtomKind::Literal; }
  bool is_var() const { return kind == AtomKind::SymbolVar; }
  bool is_param() const { return kind == AtomKind::SymbolParam; }

  friend bool operator==(const Atom&, const Atom&) = default;
  friend auto operator<=>(const Atom&, const Atom&) = default;
};

enum class ExprKind { Nil, Cons, ListVar, ListParam, True, False, Call };

/**
 * Immutable expression of the rewriting language.
 *
 * Covers rule patterns, right-hand sides and parameterized configurations.
 * Nodes are shared; copying an Expr is a reference-count bump.
 */
class Expr {
 public:
  Expr() = default;  // Nil

  static Expr nil() { return {}; }
  static Expr cons(Atom head, Expr tail);
  static Expr list_var(std::string name);
  static Expr list_param(std::string name);
  static Expr truth(bool value);
  static Expr call(std::string function, std::vector<Expr> args);
  /// 'a':'b':...:Nil
  static Expr word(std::string_view letters);
  /// 'a':'b':...:tail
  static Expr prefixed(std::string_view letters, Expr tail);

  ExprKind kind() const;
  bool is_nil() const { return node_ == nullptr; }
  bool is_call() const { return kind() == ExprKind::Call; }
  bool is_truth() const { return kind() == ExprKind::True || kind() == ExprKind::False; }

  const Atom& head() const;
  const Expr& tail() const;
  /// Variable, parameter or function name.
  const std::string& name() const;
  std::span<const Expr> args() const;

  /// No call anywhere inside.
  bool is_passive() const;
  /// Only Nil, Cons and literals.
  bool is_ground_word() const;
  /// Letters of a ground word; nullopt otherwise.
  std::optional<std::string> as_word() const;

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Expr::Node {
  ExprKind kind;
  Atom head;
  Expr tail;
  std::string name;
  std::vector<Expr> args;
};

struct Rule {
  std::vector<Expr> lhs;
  Expr rhs;

  friend bool operator==(const Rule&, const Rule&) = default;
};

struct Function {
  std::string name;
  std::vector<Rule> rules;

  std::size_t arity() const { return rules.empty() ? 0 : rules.front().lhs.size(); }
  friend bool operator==(const Function&, const Function&) = default;
};

/// Ordered collection of functions; validated on construction.
class Program {
 public:
  Program() = default;
  explicit Program(std::vector<Function> functions);

  const std::vector<Function>& functions() const { return functions_; }
  const Function* find(std::string_view name) const;
  const Function& at(std::string_view name) const;

  friend bool operator==(const Program& a, const Program& b) { return a.functions_ == b.functions_; }

 private:
  std::vector<Function> functions_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

Program parse_program(std::string_view text);
/// Parses a single pexpr or call (parameters allowed); used for configurations.
Expr parse_expression(std::string_view text);

std::string to_string(const Atom& atom);
std::string to_string(const Expr& expr);
std::string render(const Rule& rule);
std::string render(const Function& function);
/// Canonical program text; re-parses to an equal Program.
std::string render(const Program& program);

}  // namespace kmpscp

#endif  // KMPSCP_SYNTAX_HPP
