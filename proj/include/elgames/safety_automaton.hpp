#pragma once

#include "elgames/bdd.hpp"
#include "elgames/ltl.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace elgames
{
  /// Transition guarded by a cube over the NFA atoms: bits of `pos` must
  /// hold, bits of `neg` must not.
  struct nfa_edge
  {
    std::uint32_t pos = 0;
    std::uint32_t neg = 0;
    int target = -1;

    bool matches(std::uint32_t letter) const
    {
      return (letter & pos) == pos && (letter & neg) == 0;
    }
    bool operator==(const nfa_edge&) const = default;
  };

  /// Nondeterministic safety automaton: a word is accepted iff it has an
  /// infinite run. Every state except possibly the initial one has an
  /// infinite run on some word.
  struct safety_nfa
  {
    std::vector<std::string> atoms;
    /// Obligations of each state, i.e. formulas that must hold from the
    /// current position on.
    std::vector<std::vector<ltl>> states;
    std::vector<std::vector<nfa_edge>> edges;
    std::vector<int> initial;

    int size() const { return static_cast<int>(states.size()); }
    std::string to_text() const;
  };

  /// Tableau construction for a formula of the safety fragment. `atoms`
  /// fixes the letter alphabet; by default the atoms of `phi`.
  safety_nfa nfa_from_safety(const ltl& phi, std::vector<std::string> atoms = {});

  bool nfa_accepts(const safety_nfa& nfa, const lasso_word& w);

  inline constexpr int max_state_vars = 24;

  /// Deterministic automaton over subsets of NFA states, one variable per
  /// NFA state.
  struct symbolic_safety
  {
    bdd_manager* manager = nullptr;
    std::vector<std::string> atoms;
    std::vector<int> letter_vars;
    std::vector<int> state_vars;
    std::vector<int> next_vars;
    bdd initial;
    /// Conjunction of v'_q <-> OR(v_p & guard) over q, and OR(v_p).
    bdd trans;

    int num_states() const { return static_cast<int>(state_vars.size()); }
    /// Disjunction of the current-state variables.
    bdd nonempty() const;
  };

  /// Uses existing variables: state_vars[q] must have a partner (its primed
  /// copy) and letter_vars[i] encodes nfa.atoms[i]. Throws budget_exceeded
  /// beyond max_state_vars.
  symbolic_safety determinize_symbolic(const safety_nfa& nfa, bdd_manager& m,
                                       const std::vector<int>& state_vars,
                                       const std::vector<int>& letter_vars);

  /// Allocates state pairs v<q>/v<q>' and then one input variable per atom.
  symbolic_safety determinize_symbolic(const safety_nfa& nfa, bdd_manager& m);

  /// Subsets reachable from the initial one (over state_vars), nonempty or not.
  bdd reachable_subsets(const symbolic_safety& a);

  /// Number of reachable nonempty subsets.
  std::uint64_t reachable_subset_count(const symbolic_safety& a);

  /// Unique successor subset on a letter; nullopt from the empty subset.
  std::optional<std::vector<bool>> dfa_step(const symbolic_safety& a,
                                            const std::vector<bool>& subset,
                                            std::uint32_t letter);

  bool dfa_accepts(const symbolic_safety& a, const lasso_word& w);
}
