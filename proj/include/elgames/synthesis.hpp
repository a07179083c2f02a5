#pragma once

#include "elgames/bdd.hpp"
#include "elgames/el_formula.hpp"
#include "elgames/fixpoint_solver.hpp"
#include "elgames/game.hpp"
#include "elgames/ltl.hpp"
#include "elgames/safety_automaton.hpp"
#include "elgames/zielonka_tree.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace elgames
{
  struct synthesis_problem
  {
    ltl safety;
    /// Boolean combination of G F psi and F G psi, psi propositional.
    ltl liveness;
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
  };

  /// One color per propositional formula under G F / F G.
  struct el_colors
  {
    color_table table;
    /// Membership assertion of each color.
    std::vector<ltl> assertion;
    el_formula objective;
  };

  /// G F psi becomes Inf c_psi and F G psi becomes Fin c_{!psi}. Plain
  /// atoms get the first color ids, compound assertions follow; both in
  /// order of first occurrence. Throws not_el_fragment.
  el_colors colors_of(const ltl& liveness);

  /// Game whose positions valuate V (the subset of the safety automaton)
  /// and AP (the current letter). A move lets the environment pick I', the
  /// system pick O', and fixes V' as the automaton's step on the current
  /// letter. Variable order: state pairs, input pairs, output pairs.
  struct symbolic_game
  {
    bdd_manager* manager = nullptr;
    std::vector<std::string> inputs, outputs;
    safety_nfa nfa;
    /// NFA atoms are inputs followed by outputs; letters use that order.
    symbolic_safety automaton;
    std::vector<int> input_vars, output_vars;
    /// Primed variables the environment resp. the system chooses.
    std::vector<int> env_next, sys_next;
    bdd theta;
    bdd rho;
    el_colors colors;
    /// Color assertions over the unprimed AP variables.
    std::vector<bdd> color_sets;

    const std::vector<int>& state_vars() const { return automaton.state_vars; }
    int num_inputs() const { return static_cast<int>(inputs.size()); }
    int num_outputs() const { return static_cast<int>(outputs.size()); }
    /// Letter bit mask from input and output masks.
    std::uint32_t letter(std::uint32_t in, std::uint32_t out) const
    {
      return in | (out << inputs.size());
    }
    color_set colors_of_letter(std::uint32_t letter) const;
    /// Full assignment of the position (subset, letter), primed vars 0.
    std::vector<bool> position(const std::vector<bool>& subset, std::uint32_t letter) const;
  };

  /// Throws invalid_input on overlapping or empty I/O or atoms outside
  /// I and O, not_safety / not_el_fragment on malformed formulas.
  symbolic_game build_game(const synthesis_problem& problem, bdd_manager& m);

  /// forall env_next. exists sys_next. rho & S'.
  bdd symbolic_cpre(const symbolic_game& g, const bdd& s);

  /// Set backend over assertions of a symbolic game.
  class symbolic_backend
  {
  public:
    using set_type = bdd;

    explicit symbolic_backend(const symbolic_game& g) : g_(g) {}

    bdd bottom() const { return g_.manager->ff(); }
    bdd top() const { return g_.manager->tt(); }
    bdd unite(const bdd& x, const bdd& y) const { return x | y; }
    bdd intersect(const bdd& x, const bdd& y) const { return x & y; }
    bool equal(const bdd& x, const bdd& y) const { return x == y; }
    bdd cpre(const bdd& x) const { return symbolic_cpre(g_, x); }
    bdd guard(const anc_guard& a) const;

  private:
    const symbolic_game& g_;
  };

  struct mealy_state
  {
    /// Automaton subset of the next position.
    std::vector<bool> subset;
    /// Memory of the game strategy and the anchor the last letter's colors
    /// induced; both -1 in the start state.
    int leaf = -1;
    int anchor = -1;
  };

  struct mealy_transition
  {
    std::uint32_t output = 0;
    int next = -1;
  };

  struct mealy_controller
  {
    std::vector<std::string> inputs, outputs;
    std::vector<mealy_state> states;
    int initial = 0;
    /// transitions[s][input mask]
    std::vector<std::vector<mealy_transition>> transitions;

    int size() const { return static_cast<int>(states.size()); }
    /// `mealy 1` text format.
    std::string to_text() const;
  };

  /// The synthesis call owns its manager; handles stay valid while the
  /// result lives.
  struct synthesis_result
  {
    std::unique_ptr<bdd_manager> manager;
    symbolic_game game;
    zielonka_tree tree;
    solve_result<bdd> solution;
    bool realizable = false;
    /// First inputs for which no first output leads into the winning
    /// region (false iff realizable).
    bdd losing_inputs;
    std::optional<mealy_controller> controller;
    std::uint64_t reachable_subsets = 0;
  };

  struct synthesis_options
  {
    bool extract_controller = true;
  };

  synthesis_result solve_synthesis(const synthesis_problem& problem,
                                   const synthesis_options& options = {});

  /// Controller from a realizable result.
  mealy_controller extract_controller(const synthesis_result& r);

  struct controller_check
  {
    bool ok = true;
    std::string reason;
    int runs = 0;
    /// Lasso closures seen during simulation.
    int closures = 0;
  };

  /// Exact check over the controller's reachable behavior: every letter
  /// sequence keeps the safety NFA alive, transitions respect rho, and
  /// every cycle satisfies the objective (per-subset SCC check).
  controller_check verify_controller(const symbolic_game& g, const mealy_controller& c);

  /// Runs the controller against random periodic input sequences; checks
  /// safety on the NFA and the objective on each detected closure.
  controller_check simulate_controller(const symbolic_game& g, const mealy_controller& c,
                                       std::uint64_t seed, int runs, int length);

  /// Explicit two-step arena of a symbolic game: universal positions
  /// (subset, letter), existential choice nodes (position, next input),
  /// and a start node choosing the first input followed by a choice of
  /// the first output. Choice nodes carry the colors of their position.
  /// Choice nodes whose successor subset is empty have no successors.
  struct synthesis_expansion
  {
    enum class kind
    {
      start,
      start_choice,
      position,
      choice
    };

    struct node_info
    {
      kind type;
      std::vector<bool> subset;
      std::uint32_t letter = 0;
      std::uint32_t input = 0;
    };

    el_game game;
    std::vector<node_info> nodes;
    int start = 0;

    /// Distinct nonempty subsets of positions.
    int subset_count() const;
    int find_position(const std::vector<bool>& subset, std::uint32_t letter) const;
  };

  /// Throws budget_exceeded beyond max_nodes.
  synthesis_expansion expand_game(const symbolic_game& g, int max_nodes = 200000);

  struct explicit_verdict
  {
    bool realizable = false;
    /// Winning nodes of the expansion for the system.
    node_set winning;
  };

  /// Removes the universal attractor of dead choice nodes, then solves the
  /// remaining total arena by the fixpoint solver, or by the parity
  /// reduction oracle.
  explicit_verdict solve_expansion(const synthesis_expansion& x, bool via_reduction = false);
}
