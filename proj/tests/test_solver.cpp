#include "doctest.h"

#include "elgames/errors.hpp"
#include "elgames/fixpoint_solver.hpp"
#include "elgames/oracles.hpp"
#include "elgames/parity_reduction.hpp"

using namespace elgames;

namespace
{
  el_game single_node(player p, color_set colors, el_formula phi)
  {
    el_game g;
    g.colors.add("f");
    g.graph.add_node(p, colors);
    g.graph.add_edge(0, 0);
    g.objective = phi;
    return g;
  }

  node_set solve_el(const el_game& g)
  {
    auto z = zielonka_tree::build(g.objective, g.colors.size());
    return solve_game(g, z).winning();
  }
}

TEST_CASE("single-node games")
{
  CHECK(solve_el(single_node(player::forall, color_set(1), objectives::buchi(0))).count()
        == 1);
  CHECK(solve_el(single_node(player::forall, {}, objectives::buchi(0))).none());
}

TEST_CASE("kleene stages grow monotonically and stay within n iterations")
{
  std::mt19937_64 rng(17);
  for (int i = 0; i < 100; ++i)
    {
      auto g = random_game(rng(), {6, 3, 0.3, 0.4, 3});
      auto z = zielonka_tree::build(g.objective, 3);
      auto res = solve_game(g, z);
      std::vector<int> ctx;
      for_each_record(res.root, ctx, [&](const call_record<node_set>& r, auto&) {
        if (r.lfp)
          {
            CHECK(r.stages.front().none());
            CHECK(r.stages.size() <= static_cast<std::size_t>(g.graph.size()) + 1);
            CHECK(r.contexts.size() == r.stages.size());
            for (std::size_t s = 1; s < r.stages.size(); ++s)
              {
                CHECK(r.stages[s - 1].subset_of(r.stages[s]));
                CHECK(r.stages[s - 1] != r.stages[s]);
              }
          }
        return false;
      });
      CHECK(res.solution[0] == res.winning());
    }
}

TEST_CASE("fixpoint solver agrees with the parity reduction oracle")
{
  std::mt19937_64 rng(23);
  for (int i = 0; i < 300; ++i)
    {
      int n = 1 + static_cast<int>(rng() % 8), k = 1 + static_cast<int>(rng() % 4);
      auto g = random_game(rng(), {n, k, 0.3, 0.4, 3});
      auto win = solve_el(g);
      CHECK(win == solve_el_via_reduction(g));
      CHECK(solve_el(dual_game(g)) == ~win);
    }
}

TEST_CASE("Buchi: fixpoint solver, reduction and classic algorithm agree")
{
  std::mt19937_64 rng(29);
  for (int i = 0; i < 50; ++i)
    {
      auto g = random_game(rng(), {7, 1, 0.3, 0.4, 0});
      g.objective = objectives::buchi(0);
      node_set acc(g.graph.size());
      for (int v = 0; v < g.graph.size(); ++v)
        if (g.graph.colors(v).contains(0))
          acc.set(v);
      auto win = solve_el(g);
      CHECK(win == solve_buchi_classic(g.graph, acc));
      CHECK(win == solve_el_via_reduction(g));
    }
}

TEST_CASE("parity objectives agree with direct parity solving")
{
  std::mt19937_64 rng(31);
  for (int i = 0; i < 50; ++i)
    {
      auto g = random_game(rng(), {7, 4, 0.3, 0.3, 0});
      std::vector<int> prio{2, 0, 3, 1};
      g.objective = objectives::parity(prio);
      CHECK(solve_el(g) == solve_parity_family(g, prio));
    }
}

TEST_CASE("recursive parity solver")
{
  parity_game pg;
  pg.graph.add_node(player::exist);
  pg.graph.add_edge(0, 0);
  pg.priority = {2};
  CHECK(solve_parity_recursive(pg).win_exist.count() == 1);
  pg.priority = {1};
  CHECK(solve_parity_recursive(pg).win_forall.count() == 1);

  std::mt19937_64 rng(37);
  for (int i = 0; i < 1000; ++i)
    {
      auto g = random_game(rng(), {1 + static_cast<int>(rng() % 9), 0, 0.3, 0, 0});
      parity_game p{g.graph, {}, {}};
      for (int v = 0; v < g.graph.size(); ++v)
        p.priority.push_back(static_cast<int>(rng() % 6));
      auto sol = solve_parity_recursive(p);
      CHECK((sol.win_exist | sol.win_forall).count() == g.graph.size());
      CHECK((sol.win_exist & sol.win_forall).none());
      CHECK(verify_parity_solution(p, sol));
    }
}

TEST_CASE("reduction structure")
{
  color_table t({"a", "b", "c", "d"});
  el_game g;
  g.colors = t;
  g.objective = parse_el("(Inf a -> Inf b) & ((Fin a | Fin d) & Inf c)", t);
  for (int v = 0; v < 4; ++v)
    g.graph.add_node(v % 2 ? player::forall : player::exist, color_set(1u << v));
  for (int v = 0; v < 4; ++v)
    g.graph.add_edge(v, (v + 1) % 4);
  auto z = zielonka_tree::build(g.objective, 4);
  auto full = reduce_to_parity(g, z, false);
  CHECK(full.game.graph.size() == 32);
  for (int x = 0; x < full.game.graph.size(); ++x)
    {
      auto [v, t] = full.origin[x];
      CHECK((full.game.priority[x] % 2 == 0) == z.winning(t));
      bool exist = z.is_leaf(t) ? g.graph.owner(v) == player::exist : !z.winning(t);
      CHECK((full.game.graph.owner(x) == player::exist) == exist);
      for (int y : full.game.graph.succ(x))
        {
          auto [w, u] = full.origin[y];
          if (z.is_leaf(t))
            {
              CHECK(u == z.anchor(t, g.graph.colors(v)));
              CHECK(std::find(g.graph.succ(v).begin(), g.graph.succ(v).end(), w)
                    != g.graph.succ(v).end());
            }
          else
            {
              CHECK(w == v);
              CHECK(z.vertex(u).parent == t);
            }
        }
    }
  auto pruned = reduce_to_parity(g, z);
  CHECK(pruned.game.graph.size() <= 32);
  for (int v = 0; v < 4; ++v)
    CHECK(pruned.id_of(v, 0) >= 0);

  el_game other = g;
  other.objective = objectives::buchi(0);
  CHECK_THROWS_AS(reduce_to_parity(other, z), invalid_input);
}

TEST_CASE("pgsolver export")
{
  parity_game pg;
  pg.graph.add_node(player::exist);
  pg.graph.add_edge(0, 0);
  pg.priority = {2};
  CHECK(export_pgsolver(pg) == "parity 0;\n0 2 0 0 \"n0\";\n");
}
