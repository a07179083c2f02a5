#pragma once

#include "elgames/bdd.hpp"
#include "elgames/game.hpp"
#include "elgames/safety_automaton.hpp"
#include "elgames/strategy.hpp"
#include "elgames/synthesis.hpp"
#include "elgames/truth_table.hpp"
#include "elgames/zielonka_tree.hpp"

#include <random>
#include <string>

namespace elgames
{
  /// Structural violations of the tree invariants; empty when all hold.
  std::string check_tree_invariants(const zielonka_tree& z);

  lasso_play random_lasso(std::mt19937_64& rng, int num_colors);

  /// Order-independent encoding of the subtree at t (labels and flags).
  std::string canonical_form(const zielonka_tree& z, int t);

  /// Canonical form of the Streett tree built from its list encoding:
  /// vertex L has label C minus L, wins iff |L| is even, winning vertices
  /// get one child L:g_j per remaining g_j, losing vertices the single
  /// child L:r_j for last(L) = g_j. Colors r_i = 2i, g_i = 2i+1.
  std::string streett_description_canon(int k);

  int streett_leaf_count(int k);

  /// Makes a strategy total on everything reachable from its initial
  /// memory: missing moves take the first successor, missing updates the
  /// first memory value.
  el_strategy complete_strategy(const el_game& g, el_strategy s);

  /// Independent judge: the strategy product as a game where the
  /// universal player owns every node, solved through the parity
  /// reduction oracle. True iff every initial state is won.
  bool judge_strategy(const el_game& g, const el_strategy& s);

  /// Replays a counterexample: checks it is a path of the product and
  /// returns the colors visited on the loop.
  color_set lasso_colors(const el_game& g, const el_strategy& s,
                         const verify_result& r, bool& valid);

  struct differential_report
  {
    int sequences = 0;
    long operations = 0;
    /// Descriptions of disagreements; empty when both backends agree.
    std::vector<std::string> mismatches;
  };

  /// Runs random operation sequences on the decision-diagram manager and
  /// the truth-table twin in lockstep (ite, and, or, xor, not, quantifiers,
  /// rename, restrict, count_sat, pick_witness) and compares every result,
  /// including canonicity of handles.
  differential_report backend_differential(std::uint64_t seed, int sequences,
                                           int max_vars, int ops_per_sequence);

  /// Language equality of two safety NFAs over the same atoms, by
  /// exploring pairs of subsets of live states under every letter.
  bool nfa_language_equal(const safety_nfa& x, const safety_nfa& y);

  /// Random LTL formula over atoms a, b, ... using every operator.
  ltl random_ltl(std::mt19937_64& rng, int num_atoms, int depth);

  struct lasso_agreement_report
  {
    int formulas = 0;
    int words = 0;
    /// Formulas skipped because their NFA exceeded the state bound.
    int skipped = 0;
    std::vector<std::string> mismatches;
  };

  /// Membership of random lassos under LTL semantics, NFA run search and
  /// the symbolic deterministic automaton, for random safety formulas.
  lasso_agreement_report lasso_agreement(std::uint64_t seed, int formulas,
                                         int words_per_formula, int max_atoms,
                                         int max_nfa_states, int max_lasso_part);

  /// Random instance over atoms a, b, c: one or two inputs, the rest
  /// outputs; a random safety formula and a Boolean combination of
  /// G F psi / F G psi with small propositional psi.
  synthesis_problem random_synthesis_problem(std::mt19937_64& rng);
}
