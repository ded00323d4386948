#include <doctest.h>

#include "kmpscp/driving.hpp"
#include "kmpscp/interpreter.hpp"
#include "support.hpp"

using namespace kmpscp;
using testing::config;
using testing::lit;
using testing::sp;

namespace {

// Which branches admit the ground instance `a` of `c`; checks the step too.
std::size_t admitting(const Configuration& c, const std::vector<Branch>& bs, const Assignment& a, const Program& P) {
  const Expr g = instantiate(c.expr, a);
  std::size_t count = 0;
  for (const auto& b : bs) {
    auto m = match_instance(apply(b.narrowing.subst, c.expr), g);
    if (!m) continue;
    Restriction r = apply(b.narrowing.subst, c.restriction);
    r.merge(b.narrowing.added);
    if (!holds(r, *m)) continue;
    ++count;
    Expr cur = g;
    for (std::size_t i = 0; i < b.steps; ++i) cur = rewrite_once(P, cur).result;
    CHECK_MESSAGE(cur == instantiate(b.child.expr, *m), to_string(g) << " via " << to_string(b.narrowing));
    for (const auto& p : params_in_order(b.child.expr)) {
      bool bound = p.is_symbol ? m->symbols.count(p.name) > 0 : m->lists.count(p.name) > 0;
      CHECK(bound);
    }
  }
  return count;
}

void check_partition(const Configuration& c, bool compressed) {
  const Program& P = naive_matcher();
  Driver d(P);
  auto bs = d.drive_step(c);
  if (compressed)
    for (auto& b : bs) b = d.compress(b);
  for (const auto& b : bs) CHECK(satisfiable(b.child.restriction));
  for (const auto& a : testing::assignments(c.expr, "abz", 3)) {
    if (!holds(c.restriction, a)) continue;
    CHECK_MESSAGE(admitting(c, bs, a, P) == 1, to_string(instantiate(c.expr, a)));
  }
}

const std::vector<Configuration>& samples() {
  static const std::vector<Configuration> s{
      config("S(\"aab\", #y)"),
      config("L(\"ab\", #y, \"aab\", #y)"),
      config("L(\"b\", #y, \"aab\", 'a':#y)"),
      config("L(\"ab\", #s.c:#y, \"aab\", #s.c:#y)", Restriction{{sp("c"), lit('b')}}),
      config("S(\"aab\", #s.c:#w)", Restriction{{sp("c"), lit('a')}}),
      config("S(\"ab\", #s.c:#s.d:#y)"),
      config("L(#s.c:#x, #s.d:#y, \"ab\", #y)"),
      config("S(\"ba\", #y)"),
  };
  return s;
}

}  // namespace

TEST_CASE("driving the entry configuration") {
  Driver d(naive_matcher());
  auto bs = d.drive_step(config("S(\"aab\", #y)"));
  REQUIRE(bs.size() == 3);
  CHECK(bs[0].narrowing.rule_index == 0);
  CHECK(bs[1].narrowing.rule_index == 1);
  CHECK(bs[2].narrowing.rule_index == 2);
  CHECK(alpha_equivalent(bs[0].child, config("L(\"aab\", 'a':#y1, \"aab\", #y1)")));
  CHECK(alpha_equivalent(bs[1].child, config("S(\"aab\", #y1)")));
  CHECK(bs[2].child.expr.kind() == ExprKind::False);

  const auto& s0 = bs[0].narrowing.subst.lists;
  REQUIRE(s0.count("y"));
  CHECK(s0.at("y").head() == Atom::literal('a'));
  const auto& s1 = bs[1].narrowing.subst.lists.at("y");
  REQUIRE(s1.head().is_param());
  CHECK(bs[1].narrowing.added == Restriction{{sp(s1.head().name), lit('a')}});
  CHECK(bs[2].narrowing.subst.lists.at("y").is_nil());
  for (const auto& b : bs) CHECK(b.narrowing.narrows_list());
}

TEST_CASE("driving the first L configuration") {
  Driver d(naive_matcher());
  auto bs = d.drive_step(config("L(\"ab\", #y, \"aab\", #y)"));
  REQUIRE(bs.size() == 3);
  CHECK(alpha_equivalent(bs[0].child, config("L(\"b\", #y2, \"aab\", 'a':#y2)")));
  const std::string c = bs[1].narrowing.subst.lists.at("y").head().name;
  CHECK(alpha_equivalent(bs[1].child, config("S(\"aab\", #s." + c + ":#y2)", Restriction{{sp(c), lit('a')}})));
  CHECK(alpha_equivalent(bs[2].child, config("S(\"aab\", Nil)")));
}

TEST_CASE("driving a passive configuration is rejected") {
  Driver d(naive_matcher());
  CHECK_THROWS_AS(d.drive_step(config("T")), std::invalid_argument);
}

TEST_CASE("compression") {
  Driver d(naive_matcher());
  auto bs = d.drive_step(config("S(\"aab\", #y)"));
  Branch first = d.compress(bs[0]);
  CHECK(alpha_equivalent(first.child, config("L(\"ab\", #y1, \"aab\", #y1)")));
  CHECK(first.steps == 2);
  REQUIRE(first.passed.size() == 1);
  CHECK(alpha_equivalent(first.passed[0], config("L(\"aab\", 'a':#y1, \"aab\", #y1)")));

  auto sole = d.drive_step(config("S(\"aab\", #s.c:#w)", Restriction{{sp("c"), lit('a')}}));
  REQUIRE(sole.size() == 1);
  CHECK(alpha_equivalent(sole[0].child, config("S(\"aab\", #w)")));

  Branch passive = d.compress(bs[2]);
  CHECK(passive.steps == 1);
  CHECK(passive.passed.empty());
  CHECK(passive.child == bs[2].child);
}

TEST_CASE("classify") {
  Driver d(naive_matcher());
  CHECK(d.classify(config("S(\"aab\", #y)")) == NodeKind::Pivot);
  CHECK(d.classify(config("L(\"aab\", 'a':#y1, \"aab\", #y1)")) == NodeKind::Transient);
  CHECK(d.classify(config("T")) == NodeKind::LeafPassive);
}

TEST_CASE("fresh names avoid names in use") {
  Driver d(naive_matcher());
  auto bs = d.drive_step(config("S(\"ab\", #y1)"));
  const Expr& shape = bs[1].narrowing.subst.lists.at("y1");
  CHECK(shape.tail().name() != "y1");
  auto more = d.drive_step(config("S(\"ab\", #y1)"));
  CHECK(more[1].narrowing.subst.lists.at("y1").tail().name() != shape.tail().name());
}

TEST_CASE("branches partition the ground instances") {
  for (const auto& c : samples()) {
    CAPTURE(to_string(c));
    check_partition(c, false);
  }
}

TEST_CASE("compressed branches still partition and land on their children") {
  for (const auto& c : samples()) {
    CAPTURE(to_string(c));
    check_partition(c, true);
  }
}

TEST_CASE("stuck configurations are reported") {
  Program p = parse_program("G { 'a':x = T; }");
  Driver d(p);
  CHECK_THROWS_AS(d.drive_step(config("G(#y)")), StuckConfiguration);
  CHECK_NOTHROW(d.drive_step(config("G('a':#y)")));
}

TEST_CASE("narrowing text uses one-based rule numbers") {
  Driver d(naive_matcher());
  auto bs = d.drive_step(config("S(\"a\", #y)"));
  CHECK(to_string(bs[0].narrowing).rfind("rule 1:", 0) == 0);
  CHECK(to_string(bs[2].narrowing).rfind("rule 3:", 0) == 0);
}
