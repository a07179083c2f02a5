#pragma once

#include "elgames/fixpoint_solver.hpp"
#include "elgames/game.hpp"
#include "elgames/zielonka_tree.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace elgames
{
  /// Finite-memory strategy with Zielonka leaves as memory values.
  /// The memory is updated on every edge: update(v, m, w) is the memory
  /// after moving from v (with memory m) to w.
  struct el_strategy
  {
    std::vector<int> memory;
    std::map<int, int> initial;
    std::map<std::pair<int, int>, int> move;
    std::map<std::tuple<int, int, int>, int> update;
  };

  /// Graph with node colors and designated initial nodes.
  struct colored_graph
  {
    std::vector<std::vector<int>> succ;
    std::vector<color_set> colors;
    std::vector<int> initial;
  };

  struct cycle_violation
  {
    /// The inf-set realized by the lasso, with eval(phi, inf_set) false.
    color_set inf_set;
    std::vector<int> prefix;
    std::vector<int> loop;
  };

  /// Exact check that every infinite path from an initial node satisfies
  /// phi: for each D with eval(phi, D) false, looks for a reachable SCC
  /// inside the D-colored part whose colors are exactly D.
  std::optional<cycle_violation> find_violation(const colored_graph& g,
                                                const el_formula& phi, int num_colors);

  struct verify_result
  {
    bool ok = false;
    std::string reason;
    /// Product states (node, memory) of the counterexample, if any.
    std::vector<std::pair<int, int>> prefix, loop;
    color_set inf_set;
  };

  verify_result verify_strategy(const el_game& game, const el_strategy& s,
                                const node_set& claimed_win);

  /// Picks the child of the losing vertex s that continues the least
  /// signature; sig(u) yields the node's signature at vertex u.
  template <class Sig>
  int choose_child(const zielonka_tree& z, int s, Sig&& sig)
  {
    auto own = sig(s);
    std::size_t len = own ? own->size() : 0;
    int best = -1;
    std::vector<int> best_key;
    for (int u : z.vertex(s).children)
      {
        auto su = sig(u);
        if (!su)
          continue;
        std::vector<int> key(su->begin(),
                             su->begin() + static_cast<long>(std::min(len, su->size())));
        if (best == -1 || key < best_key)
          {
            best = u;
            best_key = std::move(key);
          }
      }
    if (best == -1)
      throw std::logic_error("no child of a losing vertex contains the node");
    return best;
  }

  /// Walks from vertex a down to a leaf: round-robin after child `after`
  /// at a winning a (first child if after < 0), first child at deeper
  /// winning vertices, choose_child at losing ones.
  template <class Sig>
  int descend(const zielonka_tree& z, int a, int after, Sig&& sig)
  {
    int u = a;
    bool first = true;
    while (!z.is_leaf(u))
      {
        const auto& ch = z.vertex(u).children;
        if (!z.winning(u))
          u = choose_child(z, u, sig);
        else if (first && after >= 0)
          u = ch[(after + 1) % ch.size()];
        else
          u = ch[0];
        first = false;
      }
    return u;
  }

  el_strategy extract_strategy(const el_game& game, const zielonka_tree& tree,
                               const solve_result<node_set>& result);

  /// `strategy 1`, then `initial <node> <leaf>`, `move <node> <leaf> <succ>`
  /// and `update <node> <leaf> <succ> <leaf'>` lines.
  std::string save_strategy(const el_strategy& s);
  el_strategy load_strategy(std::string_view text);
}
