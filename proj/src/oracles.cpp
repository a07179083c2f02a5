#include "elgames/oracles.hpp"

#include "elgames/parity_reduction.hpp"
#include "elgames/zielonka_tree.hpp"

#include <algorithm>
#include <deque>
#include <functional>

namespace elgames
{
  node_set attractor(const arena& a, const node_set& within, const node_set& target,
                     player p, std::vector<int>* strategy)
  {
    node_set attr = target & within;
    std::vector<int> missing(a.size(), 0);
    for (int v : within.members())
      for (int w : a.succ(v))
        if (within.test(w))
          ++missing[v];
    std::deque<int> queue;
    for (int v : attr.members())
      queue.push_back(v);
    while (!queue.empty())
      {
        int w = queue.front();
        queue.pop_front();
        for (int v : a.pred(w))
          {
            if (!within.test(v) || attr.test(v))
              continue;
            if (a.owner(v) == p)
              {
                attr.set(v);
                if (strategy)
                  (*strategy)[v] = w;
                queue.push_back(v);
              }
            else if (--missing[v] == 0)
              {
                attr.set(v);
                queue.push_back(v);
              }
          }
      }
    return attr;
  }

  namespace
  {
    struct recursive_solver
    {
      const parity_game& pg;
      std::vector<int>& strat;

      // returns the existential region of the subgame; the rest of `sub`
      // is won by the universal player
      node_set run(const node_set& sub)
      {
        const arena& a = pg.graph;
        if (sub.none())
          return sub;
        int d = -1;
        for (int v : sub.members())
          d = std::max(d, pg.priority[v]);
        player p = d % 2 == 0 ? player::exist : player::forall;
        node_set top(a.size());
        for (int v : sub.members())
          if (pg.priority[v] == d)
            top.set(v);

        std::vector<int> attr_strat(a.size(), -1);
        node_set attr = attractor(a, sub, top, p, &attr_strat);
        node_set rest = sub & ~attr;
        node_set w_exist_1 = run(rest);
        node_set w_opp_1 = p == player::exist ? rest & ~w_exist_1 : w_exist_1;
        if (w_opp_1.none())
          {
            for (int v : attr.members())
              {
                if (a.owner(v) != p)
                  continue;
                if (top.test(v))
                  {
                    for (int w : a.succ(v))
                      if (sub.test(w))
                        {
                          strat[v] = w;
                          break;
                        }
                  }
                else
                  strat[v] = attr_strat[v];
              }
            return p == player::exist ? sub : node_set(a.size());
          }
        player q = opponent(p);
        std::vector<int> b_strat(a.size(), -1);
        node_set b = attractor(a, sub, w_opp_1, q, &b_strat);
        for (int v : (b & ~w_opp_1).members())
          if (a.owner(v) == q)
            strat[v] = b_strat[v];
        node_set w_exist_2 = run(sub & ~b);
        if (q == player::exist)
          return w_exist_2 | b;
        return w_exist_2;
      }
    };

    // some cycle inside `nodes` goes through a node of priority d while all
    // its priorities are <= d
    bool has_bad_cycle(const parity_game& pg, const std::vector<std::vector<int>>& succ,
                       const node_set& nodes, int d)
    {
      const int n = pg.graph.size();
      node_set low(n);
      for (int v : nodes.members())
        if (pg.priority[v] <= d)
          low.set(v);
      for (int v : low.members())
        {
          if (pg.priority[v] != d)
            continue;
          std::vector<char> seen(n, 0);
          std::vector<int> stack{v};
          while (!stack.empty())
            {
              int x = stack.back();
              stack.pop_back();
              for (int y : succ[x])
                {
                  if (!low.test(y))
                    continue;
                  if (y == v)
                    return true;
                  if (!seen[y])
                    {
                      seen[y] = 1;
                      stack.push_back(y);
                    }
                }
            }
        }
      return false;
    }
  }

  parity_solution solve_parity_recursive(const parity_game& pg)
  {
    const int n = pg.graph.size();
    parity_solution sol;
    sol.strategy.assign(n, -1);
    recursive_solver rs{pg, sol.strategy};
    sol.win_exist = rs.run(node_set::full(n));
    sol.win_forall = ~sol.win_exist;
    // drop choices of nodes that ended in the opponent's region
    for (int v = 0; v < n; ++v)
      {
        bool mine = (pg.graph.owner(v) == player::exist) == sol.win_exist.test(v);
        if (!mine)
          sol.strategy[v] = -1;
      }
    return sol;
  }

  bool verify_parity_solution(const parity_game& pg, const parity_solution& sol)
  {
    const arena& a = pg.graph;
    const int n = a.size();
    if (!(sol.win_exist & sol.win_forall).none()
        || !(sol.win_exist | sol.win_forall).subset_of(node_set::full(n))
        || (sol.win_exist | sol.win_forall).count() != n)
      return false;
    for (player p : {player::exist, player::forall})
      {
        const node_set& region = p == player::exist ? sol.win_exist : sol.win_forall;
        std::vector<std::vector<int>> succ(n);
        for (int v : region.members())
          {
            if (a.owner(v) == p)
              {
                int w = sol.strategy[v];
                if (w < 0 || !region.test(w)
                    || std::find(a.succ(v).begin(), a.succ(v).end(), w) == a.succ(v).end())
                  return false;
                succ[v] = {w};
              }
            else
              {
                for (int w : a.succ(v))
                  if (!region.test(w))
                    return false;
                succ[v] = a.succ(v);
              }
          }
        int bad_parity = p == player::exist ? 1 : 0;
        for (int d = 0; d <= pg.max_priority(); ++d)
          if (d % 2 == bad_parity && has_bad_cycle(pg, succ, region, d))
            return false;
      }
    return true;
  }

  node_set solve_el_via_reduction(const el_game& game)
  {
    zielonka_tree tree = zielonka_tree::build(game.objective, game.colors.size());
    reduction_result red = reduce_to_parity(game, tree);
    parity_solution sol = solve_parity_recursive(red.game);
    node_set win(game.graph.size());
    for (int v = 0; v < game.graph.size(); ++v)
      if (sol.win_exist.test(red.id_of(v, tree.root())))
        win.set(v);
    return win;
  }

  node_set solve_buchi_classic(const arena& a, const node_set& accepting)
  {
    node_set game = node_set::full(a.size());
    for (;;)
      {
        node_set reach = attractor(a, game, accepting & game, player::exist);
        node_set trap = game & ~reach;
        if (trap.none())
          return game;
        game = game & ~attractor(a, game, trap, player::forall);
      }
  }

  node_set solve_parity_family(const el_game& game, const std::vector<int>& colors)
  {
    parity_game pg;
    pg.graph = game.graph;
    for (int v = 0; v < game.graph.size(); ++v)
      {
        int p = 0;
        for (std::size_t i = 0; i < colors.size(); ++i)
          if (game.graph.colors(v).contains(colors[i]))
            p = static_cast<int>(i) + 1;
        // shift by two so that "no parity color" is odd and below the rest
        pg.priority.push_back(p == 0 ? 1 : p + 2);
      }
    return solve_parity_recursive(pg).win_exist;
  }
}
