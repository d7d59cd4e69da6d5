#include "unit.hpp"

#include <random>

#include "inet/core.hpp"
#include "support.hpp"

using namespace inet;
using testing::net;
using testing::pat;
using testing::term;

TEST_CASE("free variables are the names used once") {
  CHECK(freeVariables(net("p~Lst(r), p~Cons(x,xs), x~One, xs~Nil")) == std::set<std::string>{"r"});
  CHECK(freeVariables(Net{}).empty());
  CHECK(freeVariables(net("a~Dup(b,c)")) == std::set<std::string>{"a", "b", "c"});
}

TEST_CASE("linearity") {
  CHECK_FALSE(checkLinearity(net("x~A, x~B")));
  auto err = checkLinearity(net("x~A, x~B, x~C"));
  REQUIRE(err);
  CHECK(err->variable == "x");
  CHECK(err->count == 3);
  CHECK_FALSE(checkLinearity(net("Lst(r)~Cons(One,Nil)")));
}

TEST_CASE("alpha equivalence of patterns") {
  CHECK(alphaEquivalent(pat("Lst(r) >< Cons(x,Nil)"), pat("Lst(a) >< Cons(b,Nil)")));
  CHECK_FALSE(alphaEquivalent(pat("Lst(r) >< Cons(x,Nil)"), pat("Lst(r) >< Cons(x,Cons(y,ys))")));
  auto p = pat("Lst(r) >< Cons(x,Cons(y,ys))");
  CHECK(alphaEquivalent(p, p));
  CHECK(alphaEquivalent(p, p.flipped()));
  // Renaming must be a bijection.
  CHECK_FALSE(alphaEquivalent(pat("A(x,y) >< B"), pat("A(x,x) >< B")));
  CHECK_FALSE(alphaEquivalent(pat("A(x) >< B(y)"), pat("A(x) >< C(y)")));
}

TEST_CASE("alpha equivalence of rules compares right sides under the same renaming") {
  Rule a = testing::rule("A(x,y) >< B", "x~y");
  Rule b = testing::rule("A(p,q) >< B", "p~q");
  Rule c = testing::rule("A(p,q) >< B", "q~p");
  Rule d = testing::rule("B >< A(p,q)", "p~q");
  CHECK(alphaEquivalentRules(a, b));
  CHECK(alphaEquivalentRules(a, d));
  // Equations compare in stored order, orientation included.
  CHECK_FALSE(alphaEquivalentRules(a, c));
  CHECK_FALSE(alphaEquivalentRules(a, testing::rule("A(p,q) >< B", "p~Eps, q~Eps")));
}

namespace {

Term randomTerm(std::mt19937_64& rng, int depth, int& var) {
  static const char* syms[] = {"A", "B", "C"};
  static const int arity[] = {0, 1, 2};
  if (depth == 0 || rng() % 3 == 0) return Term::variable("v" + std::to_string(var++));
  int s = static_cast<int>(rng() % 3);
  std::vector<Term> args;
  for (int i = 0; i < arity[s]; ++i) args.push_back(randomTerm(rng, depth - 1, var));
  return Term::agent(syms[s], std::move(args));
}

RulePattern randomPattern(std::mt19937_64& rng) {
  int var = 0;
  std::vector<Term> l, r;
  l.push_back(randomTerm(rng, 2, var));
  r.push_back(randomTerm(rng, 2, var));
  return {Term::agent("F", l), Term::agent("G", r)};
}

RulePattern renamedCopy(const RulePattern& p, const std::string& prefix) {
  std::function<Term(const Term&)> go = [&](const Term& t) {
    if (t.isVariable()) return Term::variable(prefix + t.name());
    std::vector<Term> args;
    for (const auto& a : t.args()) args.push_back(go(a));
    return Term::agent(t.name(), args);
  };
  return {go(p.left), go(p.right)};
}

}  // namespace

TEST_CASE("alpha equivalence is an equivalence relation on generated patterns") {
  std::mt19937_64 rng(7);
  std::vector<RulePattern> ps;
  for (int i = 0; i < 60; ++i) {
    ps.push_back(randomPattern(rng));
    ps.push_back(renamedCopy(ps.back(), "z"));
  }
  for (const auto& a : ps) {
    CHECK(alphaEquivalent(a, a));
    for (const auto& b : ps) {
      bool ab = alphaEquivalent(a, b);
      CHECK(ab == alphaEquivalent(b, a));
      CHECK(ab == (testing::anonymous(a.left) == testing::anonymous(b.left) &&
                   testing::anonymous(a.right) == testing::anonymous(b.right)));
      if (!ab) continue;
      for (const auto& c : ps)
        if (alphaEquivalent(b, c)) CHECK(alphaEquivalent(a, c));
    }
  }
}

TEST_CASE("positions order lexicographically and totally") {
  Position a{{1, 1}}, b{{1, 1, 2}}, c{{2, 1}}, d{{2, 2}};
  CHECK(a < b);
  CHECK(b < c);
  CHECK(c < d);
  CHECK(a.isPrefixOf(b));
  CHECK_FALSE(b.isPrefixOf(a));
  std::vector<Position> all{a, b, c, d, {{1, 2}}, {{2, 1, 1, 1}}};
  for (const auto& x : all)
    for (const auto& y : all) CHECK((x == y) + (x < y) + (y < x) == 1);
  CHECK(toString(b) == "[1,1,2]");
}

TEST_CASE("pattern classification and lookup") {
  auto orn = pat("Lst(r) >< Cons(x,xs)");
  auto inp = pat("Lst(r) >< Cons(x,Cons(y,Nil))");
  CHECK(orn.isOrn());
  CHECK(inp.isInp());
  CHECK(inp.nestedAgentCount() == 2);
  REQUIRE(inp.at({{2, 2, 2}}));
  CHECK(inp.at({{2, 2, 2}})->name() == "Nil");
  CHECK(inp.at({{2, 3}}) == nullptr);
  CHECK(patternVariables(inp) == std::vector<std::string>{"r", "x", "y"});
}

TEST_CASE("symbol table keeps the first arity") {
  SymbolTable t;
  CHECK(t.declare("Cons", 2));
  CHECK(t.declare("Cons", 2));
  CHECK_FALSE(t.declare("Cons", 1));
  CHECK(*t.arity("Cons") == 2);
  CHECK_FALSE(t.arity("Nil"));
}

TEST_CASE("canonical rule printing") {
  Rule r = testing::rule("Lst(r) >< Cons(x,var0)", "Lst_Cons(r,x)~var0");
  CHECK(formatRule(r) == "Lst(a) >< Cons(b,c) => Lst_Cons(a,b)~c");
  CHECK(formatRule(testing::rule("Eps >< One", "")) == "Eps >< One");
  CHECK(formatRule(testing::rule("F >< C(Nil)", "")) == "F >< C(Nil) =>");
}

TEST_CASE("name supply skips reserved names") {
  NameSupply s({"b"});
  CHECK(s.next() == "a");
  CHECK(s.next() == "c");
  NameSupply t;
  for (int i = 0; i < 26; ++i) t.next();
  CHECK(t.next() == "aa");
  CHECK(t.next() == "ab");
}
