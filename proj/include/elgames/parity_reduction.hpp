#pragma once

#include "elgames/game.hpp"
#include "elgames/zielonka_tree.hpp"

#include <string>
#include <utility>
#include <vector>

namespace elgames
{
  struct product_node
  {
    int game_node;
    int tree_vertex;
  };

  struct reduction_result
  {
    parity_game game;
    int tree_size = 0;
    /// Parity node id -> (game node, tree vertex).
    std::vector<product_node> origin;
    /// game_node * tree_size + tree_vertex -> parity node id, or -1 if pruned.
    std::vector<int> index;

    int id_of(int v, int t) const { return index[v * tree_size + t]; }
  };

  /// Parity game on V x T. With `prune`, only nodes reachable from some
  /// (v, root) are kept; ids follow the order of v * |T| + t.
  reduction_result reduce_to_parity(const el_game& game, const zielonka_tree& tree,
                                    bool prune = true);

  /// PGSolver text; owner 0 is the existential player.
  std::string export_pgsolver(const parity_game& pg);
  std::string parity_to_dot(const parity_game& pg);
}
