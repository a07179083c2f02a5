#include "doctest.h"

#include "elgames/errors.hpp"
#include "elgames/ltl.hpp"
#include "support.hpp"

using namespace elgames;

namespace
{
  ltl p(const char* s) { return parse_ltl(s); }
}

TEST_CASE("ltl precedence and associativity")
{
  CHECK(p("a -> b -> c") == ltl::implies(p("a"), ltl::implies(p("b"), p("c"))));
  CHECK(p("a | b & c") == ltl::disj(p("a"), ltl::conj(p("b"), p("c"))));
  CHECK(p("a U b U c") == ltl::until(p("a"), ltl::until(p("b"), p("c"))));
  CHECK(p("!a U b") == ltl::until(ltl::negate(p("a")), p("b")));
  CHECK(p("G a & b") == ltl::conj(ltl::globally(p("a")), p("b")));
  CHECK(p("a R b & c") == ltl::conj(ltl::release(p("a"), p("b")), p("c")));
  CHECK(p("X X b") == ltl::next(ltl::next(p("b"))));
  CHECK(p("XXb") == ltl::atom("XXb"));
  CHECK(p("Go") == ltl::atom("Go"));
  CHECK(p("F(true)") == ltl::eventually(ltl::tt()));
}

TEST_CASE("ltl syntax errors")
{
  for (const char* bad : {"", "a &", "(a", "a b", "U a", "G", "a -> ", "!)"})
    CHECK_THROWS_AS(parse_ltl(bad), parse_error);
  try
    {
      parse_ltl("a & (b | )");
      FAIL("expected parse_error");
    }
  catch (const parse_error& e)
    {
      CHECK(e.position() == 9);
    }
}

TEST_CASE("ltl printing round-trips")
{
  CHECK(to_string(p("G(a -> b | X X b)")) == "G (a -> (b | X X b))");
  std::mt19937_64 rng(3);
  for (int i = 0; i < 300; ++i)
    {
      ltl f = random_ltl(rng, 3, 4);
      CHECK(parse_ltl(to_string(f)) == f);
    }
}

TEST_CASE("negation normal form and the safety fragment")
{
  CHECK(to_nnf(p("!G p")) == p("F !p"));
  CHECK(to_nnf(p("!(a U b)")) == p("!a R !b"));
  CHECK(to_nnf(p("!X (a & !b)")) == p("X (!a | b)"));
  CHECK(to_nnf(p("a -> X b")) == p("!a | (a & X b)"));
  CHECK(to_nnf(p("X a -> b")) == p("X !a | b"));
  CHECK_NOTHROW(check_safety(p("G(b | c)")));
  CHECK_NOTHROW(check_safety(p("G(b | c) & G(a -> b | X X b)")));
  CHECK_NOTHROW(check_safety(p("!(a U b)")));
  CHECK(is_safety(p("!F a")));
  try
    {
      check_safety(p("F b"));
      FAIL("expected not_safety");
    }
  catch (const not_safety& e)
    {
      CHECK(e.op() == "F");
    }
  try
    {
      check_safety(p("!G p"));
      FAIL("expected not_safety");
    }
  catch (const not_safety& e)
    {
      CHECK(e.op() == "F");
    }
  CHECK_THROWS_AS(check_safety(p("G (a U b)")), not_safety);
  CHECK_THROWS_AS(check_safety(p("!(a R b)")), not_safety);
}

TEST_CASE("lasso semantics")
{
  std::vector<std::string> ab{"a", "b"};
  lasso_word only_a{{}, {1}};
  lasso_word a_then_b{{1}, {2}};
  CHECK(holds_on_lasso(p("G a"), ab, only_a));
  CHECK_FALSE(holds_on_lasso(p("F b"), ab, only_a));
  CHECK(holds_on_lasso(p("a U b"), ab, a_then_b));
  CHECK(holds_on_lasso(p("X G b"), ab, a_then_b));
  CHECK_FALSE(holds_on_lasso(p("X X false"), ab, only_a));
  CHECK(holds_on_lasso(p("G F a"), ab, lasso_word{{0, 0}, {0, 1, 2}}));
  CHECK_FALSE(holds_on_lasso(p("F G a"), ab, lasso_word{{1}, {1, 0}}));
  CHECK(holds_on_lasso(p("b R a"), ab, lasso_word{{1, 1}, {0}}) == false);
  CHECK(holds_on_lasso(p("b R a"), ab, lasso_word{{1, 3}, {0}}));
  CHECK_THROWS_AS(holds_on_lasso(p("c"), ab, only_a), invalid_input);
  CHECK_THROWS_AS(holds_on_lasso(p("a"), ab, lasso_word{{1}, {}}), invalid_input);
}

TEST_CASE("negation normal form preserves lasso semantics")
{
  std::mt19937_64 rng(11);
  std::vector<std::string> abc{"a", "b", "c"};
  for (int i = 0; i < 400; ++i)
    {
      ltl f = random_ltl(rng, 3, 4);
      ltl g = to_nnf(f);
      ltl neg = to_nnf(ltl::negate(f));
      for (int j = 0; j < 10; ++j)
        {
          lasso_word w = random_lasso_word(rng, 3, 4, 4);
          bool v = holds_on_lasso(f, abc, w);
          CHECK(holds_on_lasso(g, abc, w) == v);
          CHECK(holds_on_lasso(neg, abc, w) == !v);
        }
    }
}

TEST_CASE("random safety formulas stay in the fragment")
{
  std::mt19937_64 rng(5);
  for (int i = 0; i < 300; ++i)
    CHECK(is_safety(random_safety_formula(rng, 3, 4)));
}
