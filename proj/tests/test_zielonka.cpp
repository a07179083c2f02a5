#include "doctest.h"

#include "elgames/errors.hpp"
#include "elgames/game.hpp"
#include "elgames/zielonka_tree.hpp"
#include "support.hpp"

#include <cmath>
#include <map>

using namespace elgames;

namespace
{
  color_set by_names(const color_table& t, std::initializer_list<const char*> names)
  {
    color_set s;
    for (auto n : names)
      s = s.with(t.at(n));
    return s;
  }

  int find_label(const zielonka_tree& z, color_set l)
  {
    for (int t = 0; t < z.size(); ++t)
      if (z.label(t) == l)
        return t;
    return -1;
  }
}

TEST_CASE("Buchi tree has a winning root and one losing leaf")
{
  auto z = zielonka_tree::build(objectives::buchi(0), 1);
  REQUIRE(z.size() == 2);
  CHECK(z.winning(0));
  CHECK(z.label(0) == color_set(1));
  CHECK(!z.winning(1));
  CHECK(z.label(1).empty());
  CHECK(z.vertex(0).level == 1);
  CHECK(z.vertex(1).level == 0);
  CHECK(check_tree_invariants(z).empty());
}

TEST_CASE("generalized Buchi tree")
{
  auto z = zielonka_tree::build(objectives::generalized_buchi({0, 1, 2, 3}), 4);
  REQUIRE(z.size() == 5);
  CHECK(z.winning(0));
  REQUIRE(z.vertex(0).children.size() == 4);
  // descending size, then ascending mask: C\{f0} has the largest mask
  std::vector<color_set> labels;
  for (int c : z.vertex(0).children)
    {
      CHECK(!z.winning(c));
      CHECK(z.is_leaf(c));
      labels.push_back(z.label(c));
    }
  CHECK(labels == std::vector<color_set>{color_set(0b0111), color_set(0b1011),
                                         color_set(0b1101), color_set(0b1110)});
}

TEST_CASE("Streett trees match the list-encoded description")
{
  for (int k = 1; k <= 3; ++k)
    {
      std::vector<std::pair<int, int>> pairs;
      for (int i = 0; i < k; ++i)
        pairs.push_back({2 * i, 2 * i + 1});
      auto z = zielonka_tree::build(objectives::streett(pairs), 2 * k);
      CHECK(z.height() == 2 * k);
      CHECK(static_cast<int>(z.leaves().size()) == streett_leaf_count(k));
      CHECK(check_tree_invariants(z).empty());
      CHECK(canonical_form(z, 0) == streett_description_canon(k));
    }
}

TEST_CASE("tree of the mixed Streett/Rabin example")
{
  color_table t({"a", "b", "c", "d"});
  auto phi = parse_el("(Inf a -> Inf b) & ((Fin a | Fin d) & Inf c)", t);
  auto z = zielonka_tree::build(phi, 4);
  REQUIRE(z.size() == 8);
  CHECK(check_tree_invariants(z).empty());

  // figure ids -> labels and flags
  struct fig
  {
    std::initializer_list<const char*> label;
    bool winning;
    int parent;
  };
  std::map<int, fig> figure{
    {1, {{"a", "b", "c", "d"}, false, 0}}, {2, {{"a", "b", "c"}, true, 1}},
    {3, {{"b", "c", "d"}, true, 1}},       {4, {{"a", "b"}, false, 2}},
    {5, {{"a", "c"}, false, 2}},           {6, {{"b", "d"}, false, 3}},
    {7, {{"c"}, true, 5}},                 {8, {{}, false, 7}},
  };
  std::map<int, int> id;
  for (auto& [f, spec] : figure)
    {
      id[f] = find_label(z, by_names(t, spec.label));
      REQUIRE(id[f] >= 0);
      CHECK(z.winning(id[f]) == spec.winning);
    }
  for (auto& [f, spec] : figure)
    if (spec.parent)
      CHECK(z.vertex(id[f]).parent == id[spec.parent]);
  CHECK(z.vertex(id[1]).children == std::vector<int>{id[2], id[3]});
  CHECK(z.vertex(id[2]).children == std::vector<int>{id[4], id[5]});
  CHECK(z.leaves() == std::vector<int>{id[4], id[8], id[6]});

  SUBCASE("anchors from leaf 8")
  {
    CHECK(z.anchor(id[8], by_names(t, {"d"})) == id[1]);
    CHECK(z.anchor(id[8], by_names(t, {"c"})) == id[7]);
    CHECK(z.anchor(id[8], {}) == id[8]);
    CHECK(z.anchor(id[8], by_names(t, {"a"})) == id[5]);
    CHECK(z.anchor(id[8], by_names(t, {"b"})) == id[2]);
  }
}

TEST_CASE("anc membership agrees with anchors")
{
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i)
    {
      int k = 1 + static_cast<int>(rng() % 4);
      auto z = zielonka_tree::build(random_formula(rng, k, 4), k);
      for (int leaf : z.leaves())
        for (std::uint32_t m = 0; m < (1u << k); ++m)
          for (int s : z.path_to(leaf))
            CHECK(z.anc_member(s, leaf, color_set(m))
                  == (z.anchor(leaf, color_set(m)) == s));
      if (z.size() > 1)
        CHECK_THROWS_AS(z.anc_member(1, 0, {}), invalid_input);
    }
}

TEST_CASE("generalized Buchi anc sets")
{
  auto z = zielonka_tree::build(objectives::generalized_buchi({0, 1, 2}), 3);
  for (int i = 0; i < 3; ++i)
    {
      int si = z.vertex(0).children[i];
      int f = z.label(0).minus(z.label(si)).members().front();
      for (std::uint32_t m = 0; m < 8; ++m)
        {
          color_set g(m);
          CHECK(z.anc_member(0, si, g) == g.contains(f));
          CHECK(z.anc_member(si, si, g) == g.subset_of(z.label(si)));
        }
    }
}

TEST_CASE("even-cardinality tree sizes follow t(i+1) = (i+1) t(i) + 1")
{
  int expected = 1;
  for (int k = 0; k <= 4; ++k)
    {
      auto z = zielonka_tree::build(objectives::even_cardinality(k), k);
      CHECK(z.size() == expected);
      expected = (k + 1) * expected + 1;
    }
}

TEST_CASE("size, height and branching bounds on random formulas")
{
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i)
    {
      int k = static_cast<int>(rng() % 6);
      auto z = zielonka_tree::build(random_formula(rng, k, 5), k);
      CHECK(check_tree_invariants(z).empty());
      double fact = std::tgamma(k + 1.0);
      CHECK(z.size() <= static_cast<int>(std::ceil(std::exp(1.0) * fact)));
      CHECK(z.height() <= k);
      CHECK(z.max_branching() <= (1 << k));
    }
}

TEST_CASE("color budget")
{
  CHECK_THROWS_AS(zielonka_tree::build(el_formula::tt(), 13), budget_exceeded);
}

TEST_CASE("fair induced walk")
{
  auto z = zielonka_tree::build(objectives::buchi(0), 1);
  auto w = fair_induced_walk(z, {{}, {color_set(1)}});
  CHECK(w.dominating == 0);
  CHECK(w.winning);
  w = fair_induced_walk(z, {{color_set(1)}, {color_set()}});
  CHECK(w.dominating == 1);
  CHECK(!w.winning);
  CHECK_THROWS_AS(fair_induced_walk(z, {{}, {}}), invalid_input);
}

TEST_CASE("fair walk decides the objective on random lassos")
{
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i)
    {
      int k = 1 + static_cast<int>(rng() % 4);
      auto z = zielonka_tree::build(random_formula(rng, k, 4), k);
      lasso_play play = random_lasso(rng, k);
      color_set loop_union;
      for (auto c : play.loop)
        loop_union |= c;
      auto w = fair_induced_walk(z, play);
      CHECK(loop_union.subset_of(z.label(w.dominating)));
      CHECK(w.winning == z.formula().eval(loop_union));
    }
}

TEST_CASE("text and dot output")
{
  color_table t({"f"});
  auto z = zielonka_tree::build(objectives::buchi(0), 1);
  CHECK(z.to_text(t) == "0 [win] {f} lev=1\n  1 (lose) {} lev=0\n");
  auto dot = z.to_dot(t);
  CHECK(dot.find("t0 [shape=box") != std::string::npos);
  CHECK(dot.find("t1 [shape=circle") != std::string::npos);
  CHECK(dot.find("t0 -> t1") != std::string::npos);
}
