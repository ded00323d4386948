#include <doctest.h>

#include <cstdlib>

#include "kmpscp/interpreter.hpp"
#include "support.hpp"

using namespace kmpscp;

namespace {

Expr S(const std::string& p, const std::string& y) { return Expr::call("S", {Expr::word(p), Expr::word(y)}); }

}  // namespace

TEST_CASE("match_lhs") {
  const Program& P = naive_matcher();
  const Rule& s1 = P.at("S").rules[0];
  auto b = match_lhs(s1, std::vector<Expr>{Expr::word("ab"), Expr::word("ac")});
  REQUIRE(b.has_value());
  CHECK(*b->symbol("a") == Atom::literal('a'));
  CHECK(*b->list("p") == Expr::word("b"));
  CHECK(*b->list("y") == Expr::word("c"));

  CHECK_FALSE(match_lhs(s1, std::vector<Expr>{Expr::word("a"), Expr::word("b")}).has_value());

  const Rule& l4 = P.at("L").rules[3];
  auto c = match_lhs(l4, std::vector<Expr>{Expr::nil(), Expr::nil(), Expr::word("a"), Expr::nil()});
  REQUIRE(c.has_value());
  CHECK(c->list("y")->is_nil());
  CHECK(*c->list("q") == Expr::word("a"));
  CHECK(c->list("z")->is_nil());

  CHECK_THROWS_AS(match_lhs(s1, std::vector<Expr>{Expr::nil()}), std::invalid_argument);
}

TEST_CASE("hand-traced step counts") {
  const Program& P = naive_matcher();
  std::vector<std::size_t> rules;
  EvalOptions o;
  o.observer = [&](const Expr& call, std::size_t r) { rules.push_back(call.name() == "S" ? r + 1 : 10 + r + 1); };
  Outcome out = eval_call(P, S("a", "ba"), o);
  CHECK(out == Outcome{true, 4});
  // S rule 2, S rule 1, L rule 1, L rule 4.
  CHECK(rules == std::vector<std::size_t>{2, 1, 11, 14});
  CHECK(eval_call(P, S("a", "a")) == Outcome{true, 3});
}

TEST_CASE("fuel") {
  try {
    eval_call(naive_matcher(), S("a", "ba"), 2);
    FAIL("expected fuel exhaustion");
  } catch (const EvalError& e) {
    CHECK(e.kind() == EvalError::Kind::FuelExhausted);
  }
  CHECK(eval_call(naive_matcher(), S("a", "ba"), 4).value);
}

TEST_CASE("naive_search examples") {
  CHECK(naive_search("aab", "abaab"));
  CHECK_FALSE(naive_search("a", ""));
  CHECK_FALSE(naive_search("ab", "b"));
  CHECK_THROWS_AS(naive_search("", "abc"), std::invalid_argument);
}

TEST_CASE("evaluation errors") {
  Program p = parse_program("G { 'a':x = T; }\nH { x = 'a':x; }");
  try {
    eval_call(p, Expr::call("G", {Expr::word("b")}));
    FAIL("expected a stuck term");
  } catch (const EvalError& e) {
    CHECK(e.kind() == EvalError::Kind::NoRuleMatches);
  }
  try {
    eval_call(p, Expr::call("G", {Expr::list_param("y")}));
    FAIL("expected a groundness error");
  } catch (const EvalError& e) {
    CHECK(e.kind() == EvalError::Kind::NotGround);
  }
  CHECK_THROWS_AS(eval_call(p, Expr::call("H", {Expr::word("b")})), EvalError);
}

TEST_CASE("agrees with substring containment over {a,b}") {
  for (const auto& p : testing::words("ab", 1, 4))
    for (const auto& y : testing::words("ab", 0, 7)) {
      Outcome o = eval_call(naive_matcher(), S(p, y), 16 * (p.size() + 1) * (y.size() + 1));
      if (o.value != testing::contains(p, y)) FAIL_CHECK("p=" << p << " y=" << y);
      CHECK(o.steps >= 1);
    }
}

TEST_CASE("evaluation is deterministic") {
  for (const auto& y : testing::words("abc", 0, 5)) {
    auto a = naive_search_outcome("abca", y);
    auto b = naive_search_outcome("abca", y);
    CHECK(a == b);
  }
}

TEST_CASE("naive cost grows with pattern and string") {
  for (std::size_t k : {2, 4}) {
    std::string p(k, 'a');
    p += 'b';
    for (std::size_t m : {20, 40, 80}) {
      auto s1 = naive_search_outcome(p, std::string(m, 'a')).steps;
      auto s2 = naive_search_outcome(p, std::string(2 * m, 'a')).steps;
      CHECK(static_cast<double>(s2) >= 1.8 * static_cast<double>(s1));
    }
  }
  auto k2 = naive_search_outcome("aab", std::string(80, 'a')).steps;
  auto k4 = naive_search_outcome("aaaab", std::string(80, 'a')).steps;
  CHECK(k4 > k2);
}

TEST_CASE("fuel override from the environment") {
  ::setenv("SCP_FUEL", "12345", 1);
  CHECK(default_fuel_from_env() == 12345);
  ::setenv("SCP_FUEL", "junk", 1);
  CHECK(default_fuel_from_env() == kDefaultFuel);
  ::unsetenv("SCP_FUEL");
  CHECK(default_fuel_from_env() == kDefaultFuel);
}
