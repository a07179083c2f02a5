#pragma once

#include "elgames/game.hpp"

#include <vector>

namespace elgames
{
  struct parity_solution
  {
    node_set win_exist;
    node_set win_forall;
    /// Positional choice for every node owned by the winner of its region,
    /// -1 elsewhere.
    std::vector<int> strategy;
  };

  /// Classic recursive (attractor-based) algorithm, max-even convention.
  parity_solution solve_parity_recursive(const parity_game& pg);

  /// Checks closure of both regions under the positional strategies and
  /// that every cycle compatible with them has the winner's parity.
  bool verify_parity_solution(const parity_game& pg, const parity_solution& sol);

  /// Winning set of the existential player via the Zielonka-tree parity
  /// reduction and the recursive parity solver.
  node_set solve_el_via_reduction(const el_game& game);

  /// Textbook Buchi algorithm: repeatedly remove the universal attractor
  /// of the nodes that cannot reach `accepting` by existential force.
  node_set solve_buchi_classic(const arena& a, const node_set& accepting);

  /// Solves an EL game whose objective is objectives::parity(colors)
  /// directly as a parity game.
  node_set solve_parity_family(const el_game& game, const std::vector<int>& colors);

  /// Attractor of `target` for player p inside `within`; `strategy` (if
  /// given) receives attracting moves of p-nodes.
  node_set attractor(const arena& a, const node_set& within, const node_set& target,
                     player p, std::vector<int>* strategy = nullptr);
}
